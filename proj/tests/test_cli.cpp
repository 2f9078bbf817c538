// End-to-end runs of the command line binary. These shell out, so they only
// cover happy paths and a couple of error exits; the logic behind each
// subcommand is unit-tested elsewhere.
#include "doctest.h"

#ifdef STYLOGRAPH_CLI_PATH

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "stylograph/common.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    std::string cmd = std::string("\"") + STYLOGRAPH_CLI_PATH + "\" " + args + " > cli_last.log 2>&1";
    int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t line_count(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

struct Scratch {
    fs::path dir = "cli_scratch";
    Scratch() {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
};

// A small corpus with author-skewed word choice, laid out on disk the way a
// user would feed it in.
fs::path write_corpus(const fs::path& dir) {
    fs::create_directories(dir);
    std::ofstream manifest(dir / "manifest.tsv", std::ios::binary);
    manifest << "id\tauthor\tlanguage\tyear\tpath\n";
    for (int a = 0; a < 3; ++a) {
        for (int d = 0; d < 4; ++d) {
            std::string id = "a" + std::to_string(a) + "d" + std::to_string(d);
            std::string file = id + ".txt";
            stylo::Rng rng(stylo::derive_seed(99, "cli-doc", a, d));
            std::ofstream doc(dir / file, std::ios::binary);
            for (int t = 0; t < 400; ++t) {
                if (t % 9 == 8) {
                    doc << ". ";
                    continue;
                }
                // Each author leans on its own three favourite words.
                std::uint64_t pick = rng.below(10);
                if (rng.unit() < 0.55) pick = static_cast<std::uint64_t>(a) * 3 + rng.below(3);
                doc << "w" << pick << ' ';
            }
            doc << '\n';
            manifest << id << "\tauthor" << a << "\ten\t" << (1820 + a * 20 + d) << "\t" << file
                     << "\n";
        }
    }
    return dir / "manifest.tsv";
}

}  // namespace

TEST_CASE("cli help exits cleanly") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("classify --help") == 0);
}

TEST_CASE("cli rejects bad invocations") {
    CHECK(run_cli("") != 0);
    CHECK(run_cli("ingest --manifest does_not_exist.tsv --out cli_gone") == 1);
    CHECK(run_cli("curve --manifest does_not_exist.tsv --out cli_gone --mode global") == 1);
}

TEST_CASE("cli ingest summarizes a real manifest") {
    Scratch scratch;
    fs::path books = fs::path(STYLOGRAPH_DATA_DIR) / "books" / "manifest.tsv";
    fs::path out = scratch.dir / "ingest";
    REQUIRE(run_cli("ingest --manifest \"" + books.string() + "\" --out \"" + out.string() +
                    "\"") == 0);
    std::string table = slurp(out / "corpus.tsv");
    CHECK(table.rfind("id\tauthor\tlanguage\tyear\ttokens\twords\tpunctuation\tdistinct\n", 0) == 0);
    CHECK(line_count(table) == 9);  // header + 8 books
    CHECK(fs::exists(out / "run.json"));
}

TEST_CASE("cli classify, cluster and curve run end to end") {
    Scratch scratch;
    fs::path manifest = write_corpus(scratch.dir / "corpus");
    std::string common = " --manifest \"" + manifest.string() +
                         "\" --seed 7 --k-shuffles 3 --trees 10 --train-per-class 2 ";

    fs::path cls = scratch.dir / "classify";
    REQUIRE(run_cli("classify" + common + "--mode local --top-n 4 --reps 12 --out \"" +
                    cls.string() + "\"") == 0);
    for (const char* name : {"features.tsv", "words.tsv", "confusion.tsv", "confusion_counts.tsv",
                             "summary.tsv", "run.json"}) {
        CHECK(fs::exists(cls / name));
    }
    std::string summary = slurp(cls / "summary.tsv");
    CHECK(summary.find("accuracy_mean\t") != std::string::npos);
    CHECK(summary.find("reps\t12") != std::string::npos);

    fs::path clu = scratch.dir / "cluster";
    REQUIRE(run_cli("cluster" + common + "--mode local --top-n 4 --out \"" + clu.string() +
                    "\"") == 0);
    std::string newick = slurp(clu / "dendrogram.newick");
    CHECK(newick.find(';') != std::string::npos);
    CHECK(newick.find("a0d0") != std::string::npos);
    CHECK(fs::exists(clu / "merges.tsv"));

    fs::path cur = scratch.dir / "curve";
    REQUIRE(run_cli("curve" + common + "--top-n 4 --n-max 2 --sets str --reps 8 --out \"" +
                    cur.string() + "\"") == 0);
    std::string curve = slurp(cur / "curve.tsv");
    CHECK(curve.rfind("set\tn\taccuracy\terror\tse\n", 0) == 0);
    CHECK(line_count(curve) == 3);  // header + n=1,2
}

TEST_CASE("cli reruns are byte-identical") {
    Scratch scratch;
    fs::path manifest = write_corpus(scratch.dir / "corpus");
    std::string args = "classify --manifest \"" + manifest.string() +
                       "\" --seed 11 --mode local --top-n 3 --k-shuffles 2 --trees 8 --reps 6 "
                       "--train-per-class 2 --out \"";
    fs::path a = scratch.dir / "runA";
    fs::path b = scratch.dir / "runB";
    REQUIRE(run_cli(args + a.string() + "\"") == 0);
    REQUIRE(run_cli(args + b.string() + "\"") == 0);
    for (const char* name : {"features.tsv", "confusion.tsv", "summary.tsv", "run.json"}) {
        CHECK(slurp(a / name) == slurp(b / name));
    }
}

#endif  // STYLOGRAPH_CLI_PATH
