#include "oat/trial_log.hpp"

#include "oat/errors.hpp"

#include <fstream>

namespace oat {

nlohmann::json trial_record_to_json(const TrialRecord& record) {
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& rep : record.repetitions) {
        reps.push_back(metric_set_to_json(rep));
    }
    nlohmann::json j = {{"plan_id", record.plan_id},
                        {"row_index", record.row_index},
                        {"assignment", assignment_to_json(record.assignment)},
                        {"repetitions", reps},
                        {"aggregated", metric_set_to_json(record.aggregated)},
                        {"wall_time_seconds", record.wall_time_seconds},
                        {"status", record.ok() ? "ok" : "failed"}};
    if (!record.error.empty()) {
        j["error"] = record.error;
    }
    return j;
}

TrialRecord trial_record_from_json(const nlohmann::json& document) {
    if (!document.is_object()) {
        throw Error(ErrorKind::SchemaError, "trial record must be a JSON object");
    }
    TrialRecord record;
    try {
        record.plan_id = document.at("plan_id").get<std::string>();
        record.row_index = document.at("row_index").get<int>();
        record.assignment = assignment_from_json(document.at("assignment"));
        for (const auto& rep : document.at("repetitions")) {
            record.repetitions.push_back(metric_set_from_json(rep, "trial record"));
        }
        for (const auto& [name, value] : document.at("aggregated").items()) {
            record.aggregated[name] = value.get<double>();
        }
        record.wall_time_seconds = document.at("wall_time_seconds").get<double>();
        record.status = document.at("status").get<std::string>() == "ok"
                            ? TrialRecord::Status::Ok
                            : TrialRecord::Status::Failed;
        if (document.contains("error")) {
            record.error = document["error"].get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::SchemaError, std::string("malformed trial record: ") + e.what());
    }
    return record;
}

std::filesystem::path trial_log_path(const std::filesystem::path& run_dir) {
    return run_dir / "trials.log";
}

std::vector<TrialRecord> read_trial_log(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot read " + path.string());
    }
    std::vector<TrialRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (in.eof() && !line.empty()) {
            break; // unterminated tail from an interrupted writer
        }
        if (line.empty()) {
            continue;
        }
        nlohmann::json document;
        try {
            document = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception&) {
            throw Error(ErrorKind::SchemaError,
                        path.string() + ": corrupt record at line " +
                            std::to_string(records.size() + 1));
        }
        records.push_back(trial_record_from_json(document));
    }
    return records;
}

void repair_trial_log(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return;
    }
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    const auto last_newline = content.find_last_of('\n');
    const std::uintmax_t keep = last_newline == std::string::npos ? 0 : last_newline + 1;
    if (keep != content.size()) {
        std::filesystem::resize_file(path, keep);
    }
}

void append_trial_record(const std::filesystem::path& path, const TrialRecord& record) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot append to " + path.string());
    }
    out << trial_record_to_json(record).dump() << '\n';
    out.flush();
    if (!out) {
        throw Error(ErrorKind::IoError, "write to " + path.string() + " failed");
    }
}

} // namespace oat
