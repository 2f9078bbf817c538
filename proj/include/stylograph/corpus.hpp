#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace stylo {

struct DocumentMeta {
    std::string id;
    std::string author;
    std::string language;
    std::optional<int> year;
    std::filesystem::path path;
};

struct Document {
    DocumentMeta meta;
    std::string text;
};

struct Corpus {
    std::vector<Document> documents;
    std::vector<std::string> authors;  // distinct labels, sorted

    const Document& by_id(std::string_view id) const;
};

// Manifest: tab-separated with header "id\tauthor\tlanguage\tyear\tpath".
// Blank lines and '#' comments are skipped; paths resolve relative to the
// manifest's directory; year may be empty.
Corpus load_corpus(const std::filesystem::path& manifest_path);

}  // namespace stylo
