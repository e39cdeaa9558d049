/* Copyright 2026 The redax Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include "support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using namespace redax;

namespace {

struct Sandbox {
    fs::path dir;
    Sandbox() {
        dir = fs::temp_directory_path() / ("redax_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Sandbox() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string operator/(const std::string& f) const { return (dir / f).string(); }

    /// Runs the CLI with stdout+stderr captured to `log`; returns the exit code.
    int run(const std::string& args) {
        const std::string cmd = std::string(REDAX_CLI) + " " + args + " > " + (*this / "log") + " 2>&1";
        const int st = std::system(cmd.c_str());
        return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    }
    std::string log() const { return read_text_file(*this / "log"); }
};

} // namespace

TEST_CASE("cli: zero coverage writes the canonical original") {
    Sandbox s;
    const std::string in = test::fixture_path("s27.blif");
    REQUIRE(s.run("redact -i " + in + " -o " + (s / "r.blif") + " -b " + (s / "r.bits") + " --set coverage=0") == 0);
    CHECK(read_text_file(s / "r.blif") ==
          serialize_netlist(test::load_fixture("s27.blif").canonical(), NetlistFormat::Blif));
    CHECK(read_text_file(s / "r.bits").empty());
}

TEST_CASE("cli: redact, verify and tamper") {
    Sandbox s;
    const std::string in = test::fixture_path("c17.blif");
    const std::string r = s / "r.blif", b = s / "r.bits";
    REQUIRE(s.run("redact -i " + in + " -o " + r + " -b " + b + " --seed 9 --baseline --set cpi_fraction=0") == 0);
    CHECK(s.run("verify -a " + in + " -r " + r + " -b " + b) == 0);
    CHECK(s.log().find("equivalent (exhaustive, 32 vectors)") != std::string::npos);

    // Inverting a whole CLUT segment inverts an observable signal.
    std::istringstream lines(read_text_file(b));
    std::string first, rest, line;
    std::getline(lines, first);
    while (std::getline(lines, line)) rest += line + "\n";
    const auto cut = first.rfind(' ') + 1;
    for (auto k = cut; k < first.size(); ++k) first[k] = first[k] == '0' ? '1' : '0';
    {
        std::ofstream(s / "bad.bits") << first << "\n" << rest;
    }
    CHECK(s.run("verify -a " + in + " -r " + r + " -b " + (s / "bad.bits")) == 2);
    CHECK(s.log().find("MISMATCH") != std::string::npos);

    CHECK(s.run("program -i " + r + " -b " + b + " -o " + (s / "p.json")) == 0);
    CHECK(s.run("verify -a " + in + " -r " + (s / "p.json")) == 0);
}

TEST_CASE("cli: info on a gamma_min = 4 redaction") {
    Sandbox s;
    const std::string r = s / "r.blif", b = s / "r.bits";
    REQUIRE(s.run("redact -i " + test::fixture_path("alu4.blif") + " -o " + r + " -b " + b +
                  " --seed 3 --set gamma_min=4") == 0);
    REQUIRE(s.run("info -i " + r + " -b " + b) == 0);
    std::istringstream out(s.log());
    std::string line, header, row;
    while (std::getline(out, line)) {
        if (line.rfind("width", 0) == 0) header = line;
        if (line.rfind("count", 0) == 0) row = line;
    }
    REQUIRE_FALSE(row.empty());
    std::istringstream h(header), v(row);
    std::string col, val;
    std::map<std::string, long> cells;
    h >> col;
    v >> val;
    while (h >> col && v >> val) cells[col] = std::stol(val);
    CHECK(cells.at("CL2") == 0);
    CHECK(cells.at("CL3") == 0);
    CHECK(cells.at("bits") == static_cast<long>(parse_bitstream(read_text_file(b)).total_bits()));
}

TEST_CASE("cli: errors and exit codes") {
    Sandbox s;
    const std::string in = test::fixture_path("c17.blif");
    CHECK(s.run("redact -i " + in + " -o " + (s / "r.blif") + " -b " + (s / "r.bits") + " --set bogus=1") == 1);
    CHECK(s.log().find("error: params: unknown parameter 'bogus'") != std::string::npos);

    {
        std::ofstream(s / "broken.blif") << ".model x\n.inputs a\n.outputs y\n.names a b y\n11 1\n.end\n";
    }
    CHECK(s.run("redact -i " + (s / "broken.blif") + " -o " + (s / "r.blif") + " -b " + (s / "r.bits")) == 1);
    CHECK(s.log().rfind("error: parse: ", 0) == 0);

    CHECK(s.run("verify -a " + in + " -r " + (s / "missing.blif")) == 1);
    CHECK(s.run("no-such-command") == 1);

    REQUIRE(s.run("redact -i " + in + " -o " + (s / "r.blif") + " -b " + (s / "r.bits")) == 0);
    {
        std::ofstream(s / "short.bits") << "0 CLUT 2 000\n";
    }
    CHECK(s.run("program -i " + (s / "r.blif") + " -b " + (s / "short.bits") + " -o " + (s / "p.blif")) == 1);
    CHECK(s.log().rfind("error: ", 0) == 0);
}

TEST_CASE("cli: gen-variants and compare") {
    Sandbox s;
    const std::string in = test::fixture_path("c17.blif");
    REQUIRE(s.run("gen-variants -i " + in + " --seeds 1..3 --out-dir " + s.dir.string()) == 0);
    for (int k = 1; k <= 3; ++k) {
        CHECK(fs::exists(s / ("c17-s" + std::to_string(k) + ".blif")));
        CHECK(fs::exists(s / ("c17-s" + std::to_string(k) + ".bits")));
    }
    const std::string vs = (s / "c17-s1.blif") + " " + (s / "c17-s2.blif") + " " + (s / "c17-s3.blif");
    REQUIRE(s.run("compare -o " + in + " " + vs + " --matrix " + (s / "m.csv") + " --tdi-json " + (s / "t.json")) == 0);
    CHECK(read_text_file(s / "m.csv").rfind("design,", 0) == 0);
    CHECK(fs::file_size(s / "t.json") > 0);
}

TEST_CASE("cli: verify passes after redact on every fixture") {
    Sandbox s;
    for (const auto& name : test::all_fixtures()) {
        CAPTURE(name);
        const std::string in = test::fixture_path(name);
        const std::string r = s / ("r" + fs::path(name).extension().string()), b = s / "r.bits";
        REQUIRE(s.run("redact -i " + in + " -o " + r + " -b " + b + " --seed 5") == 0);
        CHECK(s.run("verify -a " + in + " -r " + r + " -b " + b) == 0);
    }
}
