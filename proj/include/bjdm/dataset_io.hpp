#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "bjdm/dataset.hpp"

namespace bjdm {

/// FIMI-style transactional text: one transaction per line, whitespace
/// separated tokens. Tokens are renumbered densely in order of first
/// appearance and duplicates within a line collapse.
TransactionalDataset parse_transactional(std::istream& in);
TransactionalDataset parse_transactional(std::string_view text);

/// SPMF-style sequence text: "-1" closes an itemset, "-2" closes a sequence.
/// Lines starting with '#' or '@' are metadata and skipped.
SequenceDataset parse_sequential(std::istream& in);
SequenceDataset parse_sequential(std::string_view text);

void write_transactional(const TransactionalDataset& dataset, std::ostream& out);
std::string write_transactional(const TransactionalDataset& dataset);

void write_sequential(const SequenceDataset& dataset, std::ostream& out);
std::string write_sequential(const SequenceDataset& dataset);

// File helpers; failures to open or write throw IoError.
TransactionalDataset load_transactional(const std::filesystem::path& path);
SequenceDataset load_sequential(const std::filesystem::path& path);
void save_transactional(const TransactionalDataset& dataset, const std::filesystem::path& path);
void save_sequential(const SequenceDataset& dataset, const std::filesystem::path& path);

}  // namespace bjdm
