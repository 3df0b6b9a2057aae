// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using smdc::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("smdc_cli_" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string operator/(const std::string& name) const { return (path_ / name).string(); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

void write(const std::string& path, const std::string& data) { std::ofstream(path, std::ios::binary) << data; }

std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("usage errors and help") {
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"--help"}).code == 0);
    CHECK(call({"split", "--help"}).code == 0);
    CHECK(call({"split", "--L", "3"}).code == 2);
    CHECK(call({"region", "3", "3"}).code == 2);
    CHECK(call({"wn", "3", "1", "2", "--rates", "1,1"}).code == 2);
    CHECK(call({"verify", "3", "1", "2", "--field", "9"}).code == 2);
}

TEST_CASE("split and join") {
    TempDir dir;
    write(dir / "a", "first source");
    write(dir / "b", "second, longer source");
    const auto s = call({"split", "--L", "3", "--N", "1", "--seed", "4", "--out-dir", dir / "shares", dir / "a", dir / "b"});
    REQUIRE(s.code == 0);
    const auto report = json::parse(s.out);
    CHECK(report.at("shares").size() == 3);
    CHECK(fs::file_size(dir / "shares/share_2.smdc") == report["shares"][1]["bytes"].get<std::size_t>());

    const auto j = call({"join", "--out-dir", dir / "got", dir / "shares/share_1.smdc", dir / "shares/share_3.smdc"});
    REQUIRE(j.code == 0);
    CHECK(read(dir / "got/recovered_1.bin") == "first source");
    CHECK_FALSE(fs::exists(dir / "got/recovered_2.bin"));

    const auto all = call({"join", "--out-dir", dir / "all", dir / "shares/share_1.smdc", dir / "shares/share_2.smdc",
                           dir / "shares/share_3.smdc"});
    REQUIRE(all.code == 0);
    CHECK(read(dir / "all/recovered_2.bin") == "second, longer source");

    const auto few = call({"join", "--out-dir", dir / "few", dir / "shares/share_2.smdc"});
    CHECK(few.code == 3);
    CHECK_FALSE(fs::exists(dir / "few"));
    CHECK(few.err.find("more needed") != std::string::npos);
}

TEST_CASE("split refuses bad requests before writing") {
    TempDir dir;
    write(dir / "a", "x");
    write(dir / "b", "y");
    CHECK(call({"split", "--L", "3", "--N", "1", "--outputs", dir / "o1", dir / "o1", dir / "o3", "--", dir / "a",
                dir / "b"})
              .code == 2);
    CHECK_FALSE(fs::exists(dir / "o1"));
    CHECK(call({"split", "--L", "3", "--N", "1", "--out-dir", dir / "s", dir / "a"}).code == 2);
    CHECK(call({"split", "--L", "3", "--N", "1", "--out-dir", dir / "s", dir / "a", dir / "missing"}).code == 5);
    CHECK_FALSE(fs::exists(dir / "s"));
    CHECK(call({"split", "--L", "3", "--N", "1", "--field", "7", "--out-dir", dir / "s", dir / "a", dir / "b"}).code ==
          2);
}

TEST_CASE("join reports corrupt files") {
    TempDir dir;
    write(dir / "junk", "not a share");
    const auto r = call({"join", "--out-dir", dir / "o", dir / "junk"});
    CHECK(r.code == 5);
    CHECK(r.err.find("junk") != std::string::npos);
}

TEST_CASE("region") {
    const auto single = call({"region", "3", "1", "2"});
    REQUIRE(single.code == 0);
    const auto j = json::parse(single.out);
    CHECK(j.at("min_sum_rate").at("value") == "3");
    CHECK(j.at("inequalities").at("constraints").size() == 3);

    const auto multi = call({"region", "--L", "3", "--N", "1", "--entropies", "1,2"});
    REQUIRE(multi.code == 0);
    const auto m = json::parse(multi.out);
    CHECK(m.at("min_sum_rate").at("value") == "6");
    CHECK(m.at("lp_min_sum_rate").at("value") == "6");

    const auto symbolic = call({"region", "3", "1"});
    CHECK(symbolic.code == 0);
    CHECK(call({"region", "4", "1", "--entropies", "1,1,1", "--budget", "4"}).code == 3);
}

TEST_CASE("wiretap network") {
    TempDir dir;
    const auto r = call({"wn", "3", "1", "2", "--rates", "2,1,1", "--edges", dir / "edges.txt"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j.at("secrecy_rate").at("value") == "0");
    CHECK(j.at("users").size() == 3);
    CHECK(read(dir / "edges.txt").rfind("s e1 2\n", 0) == 0);
    CHECK(json::parse(call({"wn", "3", "1", "2", "--rates", "1,1,1"}).out).at("secrecy_rate").at("value") == "1");
}

TEST_CASE("verify") {
    const auto r = call({"verify", "3", "1", "2"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out).at("pass").get<bool>());
    CHECK(call({"verify", "3", "1", "2", "--rates", "2,1,1"}).code == 0);
    CHECK(call({"verify", "3", "1", "2", "--rates", "1,1/2,1"}).code == 3);
    CHECK(call({"verify", "3", "1", "--lengths", "1,1"}).code == 0);
    CHECK(call({"verify", "3", "1", "--lengths", "4,4", "--budget", "1000"}).code == 3);
}
