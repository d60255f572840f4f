#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <doctest.h>

#include "ripbound/io.hpp"
#include "ripbound/rip_bounds.hpp"

using namespace ripbound;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, const fs::path& workdir) {
  const fs::path out_file = workdir / "stdout.txt";
  const std::string cmd = std::string(RIPBOUND_CLI_PATH) + " " + args + " > " +
                          out_file.string() + " 2> " +
                          (workdir / "stderr.txt").string();
  const int raw = std::system(cmd.c_str());
  CliResult r;
  r.code = WEXITSTATUS(raw);
  if (fs::exists(out_file)) r.out = slurp(out_file);
  return r;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) rows.push_back(split(line, ','));
  return rows;
}

// column lookup by header name
std::map<std::string, std::size_t> header_index(
    const std::vector<std::vector<std::string>>& rows) {
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < rows.at(0).size(); ++i) idx[rows[0][i]] = i;
  return idx;
}

// minimal well-formedness scan: tag balance and quoted attributes
bool xml_well_formed(const std::string& text) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (text[i] != '<') {
      ++i;
      continue;
    }
    if (text.compare(i, 5, "<?xml") == 0) {
      const auto end = text.find("?>", i);
      if (end == std::string::npos) return false;
      i = end + 2;
      continue;
    }
    const auto close = text.find('>', i);
    if (close == std::string::npos) return false;
    std::string tag = text.substr(i + 1, close - i - 1);
    bool closing = false, self_closing = false;
    if (!tag.empty() && tag.front() == '/') {
      closing = true;
      tag.erase(0, 1);
    }
    if (!tag.empty() && tag.back() == '/') {
      self_closing = true;
      tag.pop_back();
    }
    const std::string name = tag.substr(0, tag.find_first_of(" \t\n"));
    // quotes must pair up inside the tag
    const auto quotes = std::count(tag.begin(), tag.end(), '"');
    if (quotes % 2 != 0) return false;
    if (closing) {
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else if (!self_closing) {
      stack.push_back(name);
    }
    i = close + 1;
  }
  return stack.empty();
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

fs::path make_temp_dir() {
  const fs::path dir =
      fs::temp_directory_path() /
      ("ripbound_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST_SUITE_BEGIN("io_cli");

TEST_CASE("format_real survives a parse round trip") {
  for (double v : {0.1, 1.0 / 3.0, 6.6348966010212151, 1e-300, -2.5e17,
                   0.31746608243412143, 2.2250738585072014e-308}) {
    const std::string s = io::format_real(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("CsvTable renders and rejects ragged rows") {
  io::CsvTable t({"a", "b"});
  t.add_row({"1", "2"});
  CHECK(t.render() == "a,b\n1,2\n");
  CHECK_THROWS_AS(t.add_row({"only-one"}), std::logic_error);
}

TEST_CASE("curve CSV: schema, empty-field flags, and parse-back fidelity") {
  std::vector<double> rates;
  for (int i = 0; i < 12; ++i) rates.push_back(1.5 + i * 4.0);
  const auto rows = bounds::curve(1000, 0.1, rates, 0.99, 1.0);
  const std::string csv = io::curve_csv(rows);
  const auto parsed = parse_csv(csv);
  CHECK(parsed[0] ==
        split("compression_rate,sparsity_level,n,N,s,lower_bound,upper_new,"
              "upper_classical,flags",
              ','));
  REQUIRE(parsed.size() == rows.size() + 1);
  const auto idx = header_index(parsed);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& fields = parsed[r + 1];
    const std::string& flags = fields[idx.at("flags")];
    if (fields[idx.at("lower_bound")].empty())
      CHECK((flags.find("lower") != std::string::npos ||
             flags.find("invalid_dims") != std::string::npos));
    if (fields[idx.at("upper_new")].empty())
      CHECK((flags.find("upper") != std::string::npos ||
             flags.find("invalid_dims") != std::string::npos));
    // parse-back fidelity for present numeric fields
    if (const auto lo = rows[r].lower(); lo && !fields[idx.at("lower_bound")].empty())
      CHECK(std::strtod(fields[idx.at("lower_bound")].c_str(), nullptr) == *lo);
    if (rows[r].upper_classical)
      CHECK(std::strtod(fields[idx.at("upper_classical")].c_str(), nullptr) ==
            *rows[r].upper_classical);
  }
}

TEST_CASE("svg writer emits well-formed XML with one polyline per series") {
  std::vector<io::SvgSeries> series(2);
  series[0] = {"a", "#1f77b4", false, {{1.0, 0.1}, {2.0, 0.7}, {3.0, 4.0}}};
  series[1] = {"b", "#d62728", true, {{1.0, 0.3}, {3.0, 0.2}}};
  const std::string svg = io::svg_chart("test", "x", "y", series);
  CHECK(xml_well_formed(svg));
  CHECK(count_occurrences(svg, "<polyline") == 2);
}

TEST_CASE("manifest text is flat key=value lines") {
  const std::vector<std::pair<std::string, std::string>> kv{{"a", "1"}, {"b", "x"}};
  CHECK(io::manifest_text(kv) == "a=1\nb=x\n");
}

TEST_CASE("cli: quantile and cte emit the frozen values") {
  const fs::path dir = make_temp_dir();
  const CliResult q = run_cli("quantile --alpha 0.01 --format csv", dir);
  CHECK(q.code == 0);
  const auto rows = parse_csv(q.out);
  REQUIRE(rows.size() >= 2);
  CHECK(std::strtod(rows[1][1].c_str(), nullptr) ==
        doctest::Approx(6.6348966010212151).epsilon(1e-12));

  const CliResult c = run_cli("cte --t 6.6348966010212151 --format csv", dir);
  CHECK(c.code == 0);
  const auto crows = parse_csv(c.out);
  CHECK(std::strtod(crows[1][1].c_str(), nullptr) ==
        doctest::Approx(8.4491659621041461).epsilon(1e-10));
  fs::remove_all(dir);
}

TEST_CASE("cli: bounds values and validation exit codes") {
  const fs::path dir = make_temp_dir();
  const CliResult r = run_cli("bounds --n 200 --N 1000 --s 10 --format csv", dir);
  CHECK(r.code == 0);
  const auto rows = parse_csv(r.out);
  const auto idx = header_index(rows);
  REQUIRE(rows.size() == 4);  // header + three bound kinds
  CHECK(std::strtod(rows[1][idx.at("value")].c_str(), nullptr) ==
        doctest::Approx(0.25184149909053117).epsilon(1e-12));
  CHECK(std::strtod(rows[3][idx.at("value")].c_str(), nullptr) ==
        doctest::Approx(0.91559917357704494).epsilon(1e-12));

  // s = 1 flags the lower rows but still exits 0 (data, not failure)
  const CliResult s1 = run_cli("bounds --n 200 --N 1000 --s 1 --format csv", dir);
  CHECK(s1.code == 0);
  const auto s1rows = parse_csv(s1.out);
  CHECK(s1rows[1][idx.at("valid")] == "0");
  CHECK(s1rows[1][idx.at("value")].empty());

  CHECK(run_cli("bounds --n 0 --N 1000 --s 10", dir).code == 2);
  CHECK(run_cli("bounds --n 10 --N 5 --s 7", dir).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("cli: exact matches the library and honors the cap exit code") {
  const fs::path dir = make_temp_dir();
  const CliResult r =
      run_cli("exact --n 8 --N 12 --s 2 --seed 3 --format csv", dir);
  CHECK(r.code == 0);
  const auto rows = parse_csv(r.out);
  const auto idx = header_index(rows);
  CHECK(rows[1][idx.at("supports_checked")] == "66");

  CHECK(run_cli("exact --n 5 --N 30 --s 15 --seed 1 --cap 1000", dir).code == 4);
  fs::remove_all(dir);
}

TEST_CASE("cli: minmeas with an algorithm threshold") {
  const fs::path dir = make_temp_dir();
  const CliResult r = run_cli(
      "minmeas --N 1000 --s 10 --algorithm l1 --scan sufficient --format csv", dir);
  CHECK(r.code == 0);
  const auto rows = parse_csv(r.out);
  const auto idx = header_index(rows);
  REQUIRE(rows.size() >= 2);
  CHECK(std::strtod(rows[1][idx.at("delta_target")].c_str(), nullptr) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  const std::size_t expected =
      bounds::min_measurements_sufficient(1000, 10, 1.0 / 3.0, 0.99, 1.0);
  CHECK(std::stoull(rows[1][idx.at("n")]) == expected);
  fs::remove_all(dir);
}

TEST_CASE("cli: curve files, manifests, reruns, and cross-command consistency") {
  const fs::path dir = make_temp_dir();
  const fs::path csv_path = dir / "curve.csv";
  const std::string args =
      "curve --N 1000 --sparsity 0.01 --points 1 --rate-min 5 --rate-max 5 --out " +
      csv_path.string();
  CHECK(run_cli(args, dir).code == 0);
  REQUIRE(fs::exists(csv_path));
  const std::string first = slurp(csv_path);
  const auto rows = parse_csv(first);
  REQUIRE(rows.size() == 2);
  const auto idx = header_index(rows);

  // the single point agrees with cmd bounds at n = 200
  const CliResult b = run_cli("bounds --n 200 --N 1000 --s 10 --format csv", dir);
  const auto brows = parse_csv(b.out);
  const auto bidx = header_index(brows);
  const double lower_curve =
      std::strtod(rows[1][idx.at("lower_bound")].c_str(), nullptr);
  const double lower_plus =
      std::strtod(brows[1][bidx.at("value")].c_str(), nullptr);
  const double lower_minus =
      std::strtod(brows[2][bidx.at("value")].c_str(), nullptr);
  const double upper_curve =
      std::strtod(rows[1][idx.at("upper_new")].c_str(), nullptr);
  const double upper_bounds =
      std::strtod(brows[3][bidx.at("value")].c_str(), nullptr);
  CHECK(lower_curve == std::max(lower_plus, lower_minus));
  CHECK(upper_curve == upper_bounds);

  // manifest written alongside; identical rerun produces identical bytes
  REQUIRE(fs::exists(csv_path.string() + ".manifest"));
  const std::string manifest1 = slurp(csv_path.string() + ".manifest");
  CHECK(manifest1.find("command=curve") != std::string::npos);
  CHECK(run_cli(args, dir).code == 0);
  CHECK(slurp(csv_path) == first);
  // manifests may differ only in the timestamp line
  const std::string manifest2 = slurp(csv_path.string() + ".manifest");
  auto strip_ts = [](const std::string& m) {
    std::string out;
    std::istringstream in(m);
    std::string line;
    while (std::getline(in, line))
      if (line.rfind("timestamp=", 0) != 0) out += line + "\n";
    return out;
  };
  CHECK(strip_ts(manifest1) == strip_ts(manifest2));

  CHECK(run_cli("curve --points 1 --out /nonexistent_dir_xyz/out.csv", dir).code == 3);
  fs::remove_all(dir);
}

TEST_CASE("cli: curve svg output per level and combined") {
  const fs::path dir = make_temp_dir();
  const fs::path csv_path = dir / "c.csv";
  const fs::path svg_path = dir / "c.svg";
  // default 3 sparsity levels -> one svg per level, 3 polylines each
  CHECK(run_cli("curve --points 4 --out " + csv_path.string() + " --svg " +
                    svg_path.string(),
                dir).code == 0);
  std::size_t total_polylines = 0;
  std::size_t svg_files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 4 && name.substr(name.size() - 4) == ".svg") {
      ++svg_files;
      const std::string svg = slurp(entry.path());
      CHECK(xml_well_formed(svg));
      CHECK(count_occurrences(svg, "<polyline") == 3);
      total_polylines += count_occurrences(svg, "<polyline");
    }
  }
  CHECK(svg_files == 3);
  CHECK(total_polylines == 9);  // (number of sparsity levels) x 3

  // combined: one file with all nine
  const fs::path combined = dir / "combined.svg";
  CHECK(run_cli("curve --points 4 --out " + csv_path.string() + " --svg " +
                    combined.string() + " --svg-combine",
                dir).code == 0);
  const std::string svg = slurp(combined);
  CHECK(xml_well_formed(svg));
  CHECK(count_occurrences(svg, "<polyline") == 9);
  fs::remove_all(dir);
}

TEST_CASE("cli: orderstats csv is byte-identical across reruns") {
  const fs::path dir = make_temp_dir();
  const std::string args =
      "orderstats --n 500 --k 10 --trials 30 --seed 21 --format csv";
  const CliResult a = run_cli(args, dir);
  const CliResult b = run_cli(args, dir);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("coverage") != std::string::npos);
  fs::remove_all(dir);
}

TEST_SUITE_END();
