#include "bjdm/dataset_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "bjdm/errors.hpp"

namespace bjdm {

namespace {

class LabelTable {
public:
    explicit LabelTable(std::vector<std::string>& labels) : labels_(labels) {}

    ItemId id_of(const std::string& token) {
        auto [it, inserted] = ids_.try_emplace(token, static_cast<ItemId>(labels_.size()));
        if (inserted) labels_.push_back(token);
        return it->second;
    }

private:
    std::vector<std::string>& labels_;
    std::unordered_map<std::string, ItemId> ids_;
};

void canonicalize(Itemset& items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

TransactionalDataset parse_transactional(std::istream& in) {
    TransactionalDataset dataset;
    LabelTable labels(dataset.item_labels);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        std::istringstream tokens(line);
        Itemset transaction;
        std::string token;
        while (tokens >> token) transaction.push_back(labels.id_of(token));
        if (transaction.empty()) throw ParseError("empty transaction line", line_no);
        canonicalize(transaction);
        dataset.transactions.push_back(std::move(transaction));
    }
    if (dataset.transactions.empty()) throw ParseError("transactional input holds no transactions", 0);
    return dataset;
}

TransactionalDataset parse_transactional(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_transactional(in);
}

SequenceDataset parse_sequential(std::istream& in) {
    SequenceDataset dataset;
    LabelTable labels(dataset.item_labels);
    Sequence current;
    Itemset itemset;
    std::size_t position = 0;
    std::string line;
    while (std::getline(in, line)) {
        strip_cr(line);
        const auto first = line.find_first_not_of(" \t");
        if (first != std::string::npos && (line[first] == '#' || line[first] == '@')) continue;
        std::istringstream tokens(line);
        std::string token;
        while (tokens >> token) {
            ++position;
            if (token == "-1") {
                if (itemset.empty()) throw ParseError("itemset with zero items", position);
                canonicalize(itemset);
                current.push_back(dataset.dictionary.intern(itemset));
                itemset.clear();
            } else if (token == "-2") {
                if (!itemset.empty()) {
                    canonicalize(itemset);
                    current.push_back(dataset.dictionary.intern(itemset));
                    itemset.clear();
                }
                if (current.empty()) throw ParseError("sequence with no itemset", position);
                dataset.sequences.push_back(std::move(current));
                current.clear();
            } else {
                itemset.push_back(labels.id_of(token));
            }
        }
    }
    if (!itemset.empty() || !current.empty()) throw ParseError("unterminated sequence at end of input", position);
    if (dataset.sequences.empty()) throw ParseError("sequence input holds no sequences", position);
    return dataset;
}

SequenceDataset parse_sequential(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_sequential(in);
}

void write_transactional(const TransactionalDataset& dataset, std::ostream& out) {
    for (const auto& t : dataset.transactions) {
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (k > 0) out << ' ';
            out << dataset.item_labels[t[k]];
        }
        out << '\n';
    }
}

std::string write_transactional(const TransactionalDataset& dataset) {
    std::ostringstream out;
    write_transactional(dataset, out);
    return out.str();
}

void write_sequential(const SequenceDataset& dataset, std::ostream& out) {
    for (const auto& s : dataset.sequences) {
        for (ItemsetId id : s) {
            for (ItemId item : dataset.dictionary.content(id)) out << dataset.item_labels[item] << ' ';
            out << "-1 ";
        }
        out << "-2\n";
    }
}

std::string write_sequential(const SequenceDataset& dataset) {
    std::ostringstream out;
    write_sequential(dataset, out);
    return out.str();
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

}  // namespace

TransactionalDataset load_transactional(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_transactional(in);
}

SequenceDataset load_sequential(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_sequential(in);
}

void save_transactional(const TransactionalDataset& dataset, const std::filesystem::path& path) {
    auto out = open_output(path);
    write_transactional(dataset, out);
    if (!out) throw IoError("failed writing " + path.string());
}

void save_sequential(const SequenceDataset& dataset, const std::filesystem::path& path) {
    auto out = open_output(path);
    write_sequential(dataset, out);
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace bjdm
