#include "oat/objective.hpp"

#include "oat/errors.hpp"

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <mutex>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

extern char** environ;

namespace oat {

namespace {

// A child that exits without draining stdin must not kill the tuner.
void ignore_sigpipe() {
    static std::once_flag flag;
    std::call_once(flag, [] { std::signal(SIGPIPE, SIG_IGN); });
}

struct Pipe {
    int read_end = -1;
    int write_end = -1;

    Pipe() {
        int fds[2];
        if (::pipe(fds) != 0) {
            throw Error(ErrorKind::ObjectiveFailure,
                        std::string("pipe: ") + std::strerror(errno));
        }
        read_end = fds[0];
        write_end = fds[1];
    }
    ~Pipe() {
        close_read();
        close_write();
    }
    void close_read() {
        if (read_end >= 0) {
            ::close(read_end);
            read_end = -1;
        }
    }
    void close_write() {
        if (write_end >= 0) {
            ::close(write_end);
            write_end = -1;
        }
    }
};

std::string where(const TrialInput& input) {
    return "row " + std::to_string(input.row_index) + " repetition " +
           std::to_string(input.repetition_index);
}

} // namespace

nlohmann::json trial_input_to_json(const TrialInput& input) {
    return {{"assignment", assignment_to_json(input.assignment)},
            {"row_index", input.row_index},
            {"repetition_index", input.repetition_index},
            {"seed", input.seed}};
}

SubprocessObjective::SubprocessObjective(ObjectiveEndpoint endpoint)
    : endpoint_(std::move(endpoint)) {
    if (endpoint_.command.empty()) {
        throw Error(ErrorKind::ObjectiveFailure, "objective command is empty");
    }
}

MetricSet SubprocessObjective::evaluate(const TrialInput& input) const {
    ignore_sigpipe();

    Pipe to_child;
    Pipe from_child;

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, to_child.read_end, STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, from_child.write_end, STDOUT_FILENO);
    posix_spawn_file_actions_addclose(&actions, to_child.write_end);
    posix_spawn_file_actions_addclose(&actions, from_child.read_end);

    std::vector<std::string> argv_storage = endpoint_.command;
    std::vector<char*> argv;
    argv.reserve(argv_storage.size() + 1);
    for (auto& arg : argv_storage) {
        argv.push_back(arg.data());
    }
    argv.push_back(nullptr);

    std::map<std::string, std::string> extra_env = endpoint_.env;
    extra_env["OAT_SEED"] = std::to_string(input.seed);
    extra_env["OAT_ROW"] = std::to_string(input.row_index);
    extra_env["OAT_REP"] = std::to_string(input.repetition_index);
    std::vector<std::string> env_storage;
    for (char** entry = environ; *entry != nullptr; ++entry) {
        const char* eq = std::strchr(*entry, '=');
        if (eq == nullptr ||
            extra_env.count(std::string(*entry, static_cast<std::size_t>(eq - *entry))) == 0) {
            env_storage.emplace_back(*entry);
        }
    }
    for (const auto& [key, value] : extra_env) {
        env_storage.push_back(key + "=" + value);
    }
    std::vector<char*> envp;
    envp.reserve(env_storage.size() + 1);
    for (auto& entry : env_storage) {
        envp.push_back(entry.data());
    }
    envp.push_back(nullptr);

    pid_t pid = -1;
    const int spawn_rc =
        posix_spawnp(&pid, argv[0], &actions, nullptr, argv.data(), envp.data());
    posix_spawn_file_actions_destroy(&actions);
    if (spawn_rc != 0) {
        throw Error(ErrorKind::ObjectiveFailure,
                    where(input) + ": cannot execute '" + endpoint_.command[0] +
                        "': " + std::strerror(spawn_rc));
    }
    to_child.close_read();
    from_child.close_write();

    const auto started = std::chrono::steady_clock::now();
    const bool limited = endpoint_.timeout_seconds > 0.0;
    auto remaining_ms = [&]() -> int {
        if (!limited) {
            return -1; // poll: wait indefinitely
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        const double left = endpoint_.timeout_seconds - elapsed;
        return left <= 0.0 ? 0 : static_cast<int>(left * 1000.0) + 1;
    };
    auto kill_for_timeout = [&]() -> Error {
        ::kill(pid, SIGKILL);
        int status = 0;
        ::waitpid(pid, &status, 0);
        return Error(ErrorKind::Timeout,
                     where(input) + ": objective exceeded " +
                         std::to_string(endpoint_.timeout_seconds) + "s");
    };

    // One line of input; EPIPE just means the child does not read stdin.
    {
        const std::string line = trial_input_to_json(input).dump() + "\n";
        std::size_t written = 0;
        while (written < line.size()) {
            const ssize_t n =
                ::write(to_child.write_end, line.data() + written, line.size() - written);
            if (n < 0) {
                if (errno == EINTR) {
                    continue;
                }
                break;
            }
            written += static_cast<std::size_t>(n);
        }
        to_child.close_write();
    }

    std::string output;
    char buffer[4096];
    while (true) {
        pollfd pfd{from_child.read_end, POLLIN, 0};
        const int ready = ::poll(&pfd, 1, remaining_ms());
        if (ready < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw Error(ErrorKind::ObjectiveFailure,
                        where(input) + ": poll: " + std::strerror(errno));
        }
        if (ready == 0) {
            throw kill_for_timeout();
        }
        const ssize_t n = ::read(from_child.read_end, buffer, sizeof buffer);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw Error(ErrorKind::ObjectiveFailure,
                        where(input) + ": read: " + std::strerror(errno));
        }
        if (n == 0) {
            break;
        }
        output.append(buffer, static_cast<std::size_t>(n));
    }
    from_child.close_read();

    int status = 0;
    while (true) {
        const pid_t done = ::waitpid(pid, &status, limited ? WNOHANG : 0);
        if (done == pid) {
            break;
        }
        if (done < 0 && errno != EINTR) {
            throw Error(ErrorKind::ObjectiveFailure,
                        where(input) + ": waitpid: " + std::strerror(errno));
        }
        if (done == 0) {
            if (remaining_ms() == 0) {
                throw kill_for_timeout();
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(2));
        }
    }
    if (WIFSIGNALED(status)) {
        throw Error(ErrorKind::ObjectiveFailure,
                    where(input) + ": objective killed by signal " +
                        std::to_string(WTERMSIG(status)));
    }
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        throw Error(ErrorKind::ObjectiveFailure,
                    where(input) + ": objective exited with code " +
                        std::to_string(WEXITSTATUS(status)));
    }

    // Last non-empty line of stdout carries the metrics.
    while (!output.empty() && (output.back() == '\n' || output.back() == '\r')) {
        output.pop_back();
    }
    const auto newline = output.find_last_of('\n');
    std::string last_line =
        newline == std::string::npos ? output : output.substr(newline + 1);
    if (!last_line.empty() && last_line.back() == '\r') {
        last_line.pop_back();
    }
    if (last_line.empty()) {
        throw Error(ErrorKind::ObjectiveProtocolError,
                    where(input) + ": objective produced no metrics line");
    }
    nlohmann::json metrics_json;
    try {
        metrics_json = nlohmann::json::parse(last_line);
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorKind::ObjectiveProtocolError,
                    where(input) + ": last output line is not JSON: " + last_line);
    }
    return metric_set_from_json(metrics_json, where(input));
}

} // namespace oat
