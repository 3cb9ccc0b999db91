#pragma once

#include "oat/orthogonal_array.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace oat {

/// Returns the shipped array for a catalog identifier such as "L9(3^4)".
/// Entries are verified against both composition principles at load time.
/// Throws Error{UnknownTable} for names outside the catalog.
OrthogonalArray catalog_lookup(const std::string& name);

/// Identifiers of all shipped catalog entries, sorted.
std::vector<std::string> catalog_names();

/// Parses the versioned plain-text format: optional '#' comment lines, a
/// header line "L<N>(<h>^<k>)", then N whitespace-separated rows of 1-based
/// level indices.
OrthogonalArray parse_oa_text(const std::string& text, const std::string& origin);

/// Renders an array in the catalog file format.
std::string format_oa_text(const OrthogonalArray& array);

/// Loads one catalog-format file from disk.
OrthogonalArray load_oa_file(const std::filesystem::path& path);

} // namespace oat
