#include "stylograph/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "stylograph/unicode.hpp"

namespace stylo {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("file not found: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

bool blank_after_strip(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        char32_t cp = decode_utf8(text, pos);
        if (cp != kInvalidCodepoint && !is_space(cp)) return false;
    }
    return true;
}

}  // namespace

const Document& Corpus::by_id(std::string_view id) const {
    for (const auto& doc : documents) {
        if (doc.meta.id == id) return doc;
    }
    throw std::out_of_range("unknown document id: " + std::string(id));
}

Corpus load_corpus(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("file not found: " + manifest_path.string());
    const auto base = manifest_path.has_parent_path() ? manifest_path.parent_path()
                                                      : std::filesystem::path(".");

    Corpus corpus;
    std::set<std::string> seen_ids;
    std::set<std::string> authors;
    std::string line;
    bool header_done = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tabs(line);
        if (!header_done) {
            if (fields.size() < 5 || fields[0] != "id") {
                throw std::runtime_error("manifest header must be: id\tauthor\tlanguage\tyear\tpath");
            }
            header_done = true;
            continue;
        }
        if (fields.size() != 5) {
            throw std::runtime_error("manifest line " + std::to_string(line_no) +
                                     ": expected 5 tab-separated fields");
        }
        DocumentMeta meta;
        meta.id = fields[0];
        meta.author = fields[1];
        meta.language = fields[2];
        if (meta.id.empty()) {
            throw std::runtime_error("manifest line " + std::to_string(line_no) + ": empty id");
        }
        if (meta.author.empty()) {
            throw std::runtime_error("manifest line " + std::to_string(line_no) + ": empty author");
        }
        if (!seen_ids.insert(meta.id).second) {
            throw std::runtime_error("duplicate id: " + meta.id);
        }
        if (!fields[3].empty()) {
            int year = 0;
            auto res = std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), year);
            if (res.ec != std::errc{} || res.ptr != fields[3].data() + fields[3].size()) {
                throw std::runtime_error("manifest line " + std::to_string(line_no) +
                                         ": invalid year: " + fields[3]);
            }
            meta.year = year;
        }
        std::filesystem::path p = fields[4];
        meta.path = p.is_absolute() ? p : base / p;

        Document doc;
        doc.meta = meta;
        doc.text = read_file(meta.path);
        if (!valid_utf8(doc.text)) {
            throw std::runtime_error("undecodable text (not UTF-8): " + meta.id);
        }
        if (blank_after_strip(doc.text)) {
            throw std::runtime_error("empty document: " + meta.id);
        }
        authors.insert(meta.author);
        corpus.documents.push_back(std::move(doc));
    }
    if (!header_done) {
        throw std::runtime_error("manifest header must be: id\tauthor\tlanguage\tyear\tpath");
    }
    corpus.authors.assign(authors.begin(), authors.end());
    return corpus;
}

}  // namespace stylo
