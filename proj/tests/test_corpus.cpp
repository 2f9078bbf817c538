#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "stylograph/corpus.hpp"

using namespace stylo;
namespace fs = std::filesystem;

namespace {

// Scratch corpus directory, rebuilt for every test case.
struct Scratch {
    fs::path dir;

    Scratch() : dir(fs::path("corpus_scratch")) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }

    void file(const std::string& name, const std::string& content) {
        std::ofstream out(dir / name, std::ios::binary);
        out << content;
    }
    fs::path path(const std::string& name) const { return dir / name; }
};

const char* kHeader = "id\tauthor\tlanguage\tyear\tpath\n";

}  // namespace

TEST_CASE("manifest loads documents with metadata") {
    Scratch s;
    s.file("a.txt", "Once upon a time.");
    s.file("b.txt", "Der Anfang.");
    s.file("m.tsv", std::string(kHeader) +
                        "# a comment line\n"
                        "a\tausten\ten\t1813\ta.txt\n"
                        "\n"
                        "b\tmann\tde\t\tb.txt\n");
    Corpus c = load_corpus(s.path("m.tsv"));
    REQUIRE(c.documents.size() == 2);
    CHECK(c.documents[0].meta.id == "a");
    CHECK(c.documents[0].meta.author == "austen");
    CHECK(c.documents[0].meta.language == "en");
    CHECK(c.documents[0].meta.year == 1813);
    CHECK(c.documents[0].text == "Once upon a time.");
    CHECK_FALSE(c.documents[1].meta.year.has_value());
    CHECK(c.authors == std::vector<std::string>{"austen", "mann"});
    CHECK(c.by_id("b").meta.author == "mann");
    CHECK_THROWS(c.by_id("nope"));
}

TEST_CASE("document paths resolve relative to the manifest") {
    Scratch s;
    fs::create_directories(s.dir / "sub");
    s.file("sub/x.txt", "text here");
    s.file("m.tsv", std::string(kHeader) + "x\ta\ten\t\tsub/x.txt\n");
    Corpus c = load_corpus(s.path("m.tsv"));
    CHECK(c.documents[0].text == "text here");
}

TEST_CASE("manifest errors carry the offending value") {
    Scratch s;
    s.file("a.txt", "content");

    s.file("dup.tsv", std::string(kHeader) + "a\tx\ten\t\ta.txt\na\ty\ten\t\ta.txt\n");
    CHECK_THROWS_WITH(load_corpus(s.path("dup.tsv")), doctest::Contains("duplicate id: a"));

    s.file("missing.tsv", std::string(kHeader) + "a\tx\ten\t\tnope.txt\n");
    CHECK_THROWS_WITH(load_corpus(s.path("missing.tsv")), doctest::Contains("file not found"));

    s.file("empty.txt", "  \n\t \n");
    s.file("empty.tsv", std::string(kHeader) + "e\tx\ten\t\tempty.txt\n");
    CHECK_THROWS_WITH(load_corpus(s.path("empty.tsv")), doctest::Contains("empty document: e"));

    s.file("bad.txt", "abc\xff\xfe");
    s.file("bad.tsv", std::string(kHeader) + "b\tx\ten\t\tbad.txt\n");
    CHECK_THROWS_WITH(load_corpus(s.path("bad.tsv")), doctest::Contains("undecodable text"));

    s.file("year.tsv", std::string(kHeader) + "y\tx\ten\tMDCCC\ta.txt\n");
    CHECK_THROWS_WITH(load_corpus(s.path("year.tsv")), doctest::Contains("invalid year"));

    s.file("short.tsv", std::string(kHeader) + "a\tx\ten\ta.txt\n");
    CHECK_THROWS(load_corpus(s.path("short.tsv")));

    s.file("noheader.tsv", "a\tx\ten\t\ta.txt\n");
    CHECK_THROWS(load_corpus(s.path("noheader.tsv")));

    CHECK_THROWS_WITH(load_corpus(s.path("absent.tsv")), doctest::Contains("file not found"));
}
