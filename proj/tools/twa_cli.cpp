// twa: validate, inspect, and verify association schemes and the structure
// of their Terwilliger algebras over exact fields.
//
// Exit codes: 0 success / all checks pass, 1 verification or validation
// failure, 2 usage or I/O error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twa/fetch.hpp"
#include "twa/report_json.hpp"
#include "twa/scheme.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

twa::Scheme load_scheme(const std::string& path, bool import_mode) {
  const std::string text = read_file(path);
  return import_mode ? twa::parse_scheme_matrix(text) : twa::parse_scheme(text);
}

std::string identifier_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
  if (!out) throw std::runtime_error("short write on " + out_path);
}

struct Options {
  std::string input;
  bool import_mode = false;
  std::vector<std::uint64_t> characteristics;
  int vertex = 0;
  bool all_vertices = false;
  bool json = false;
  bool csv = false;
  bool timings = false;
  int jobs = 1;
  std::string out_path;
  std::string base_url;
  std::string fetch_out = ".";
};

twa::VerifyOptions verify_options(const Options& o) {
  twa::VerifyOptions v;
  if (!o.characteristics.empty()) v.characteristics = o.characteristics;
  v.vertex = o.vertex;
  v.all_vertices = o.all_vertices;
  v.with_timings = o.timings;
  return v;
}

int cmd_validate(const Options& o) {
  const twa::Scheme s = load_scheme(o.input, o.import_mode);
  const auto report = twa::validate(s);
  if (report.ok()) {
    std::cout << o.input << ": valid association scheme (n=" << s.n << ", d=" << s.d << ")\n";
    return 0;
  }
  std::cout << o.input << ": INVALID\n" << report.summary() << "\n";
  return 1;
}

int cmd_info(const Options& o) {
  const twa::Scheme s = load_scheme(o.input, o.import_mode);
  twa::VerifyOptions v = verify_options(o);
  v.characteristics.clear();  // classification only, no per-field pipeline
  v.all_vertices = false;
  const auto rep = twa::verify_scheme(s, identifier_of(o.input), v);
  emit(o.json ? twa::report_to_json(rep) : twa::report_to_text(rep), o.out_path);
  return rep.valid ? 0 : 1;
}

int cmd_verify(const Options& o) {
  const twa::Scheme s = load_scheme(o.input, o.import_mode);
  const auto rep = twa::verify_scheme(s, identifier_of(o.input), verify_options(o));
  std::string text;
  if (o.json)
    text = twa::report_to_json(rep, o.timings);
  else if (o.csv)
    text = twa::reports_to_csv({rep});
  else
    text = twa::report_to_text(rep, o.timings);
  emit(text, o.out_path);
  return rep.all_pass() ? 0 : 1;
}

int cmd_batch(const Options& o) {
  const auto batch = twa::run_batch(o.input, verify_options(o), o.jobs);
  std::string text;
  if (o.json)
    text = twa::batch_to_json(batch, o.timings);
  else if (o.csv)
    text = twa::batch_to_csv(batch);
  else
    text = twa::batch_to_text(batch);
  emit(text, o.out_path);
  return batch.all_pass() ? 0 : 1;
}

int cmd_fetch(const Options& o) {
  twa::FetchOptions fo;
  fo.base_url = o.base_url;
  fo.out_dir = o.fetch_out;
  const auto res = twa::fetch_corpus(o.input, fo);
  std::cout << "fetched " << res.list_id << ": " << res.count << " scheme(s), " << res.written
            << " written, " << res.unchanged << " unchanged\n"
            << "manifest: " << res.manifest_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Terwilliger algebras of association schemes over exact fields:\n"
      "dimensions, radicals, and certified Wedderburn decompositions."};
  app.require_subcommand(1);
  Options o;

  auto add_char_opts = [&o](CLI::App* cmd) {
    cmd->add_option("--char", o.characteristics,
                    "field characteristic, 0 or a prime (repeatable; default 0 2 3)");
    cmd->add_flag("--all-vertices", o.all_vertices,
                  "also check that the structure constants are vertex independent");
    cmd->add_flag("--timings", o.timings, "include per-characteristic timings in the output");
  };
  auto add_output_opts = [&o](CLI::App* cmd) {
    auto* j = cmd->add_flag("--json", o.json, "emit the canonical JSON report");
    auto* c = cmd->add_flag("--csv", o.csv, "emit one CSV row per scheme and characteristic");
    j->excludes(c);
    c->excludes(j);
    cmd->add_option("--out", o.out_path, "write the report to a file instead of stdout");
  };

  auto* validate = app.add_subcommand("validate", "check the association scheme axioms");
  validate->add_option("file", o.input, "scheme file")->required();
  validate->add_flag("--import", o.import_mode, "input is a headerless relation matrix");

  auto* info = app.add_subcommand("info", "print classification and combinatorial invariants");
  info->add_option("file", o.input, "scheme file")->required();
  info->add_flag("--import", o.import_mode, "input is a headerless relation matrix");
  info->add_flag("--json", o.json, "emit the canonical JSON report");
  info->add_option("--out", o.out_path, "write the report to a file instead of stdout");

  auto* verify = app.add_subcommand("verify", "verify the structure theorems for one scheme");
  verify->add_option("file", o.input, "scheme file")->required();
  verify->add_flag("--import", o.import_mode, "input is a headerless relation matrix");
  verify->add_option("--vertex", o.vertex, "base vertex (default 0)");
  add_char_opts(verify);
  add_output_opts(verify);

  auto* batch = app.add_subcommand("batch", "verify every *.scheme file in a directory");
  batch->add_option("dir", o.input, "directory of scheme files")->required();
  batch->add_option("--jobs", o.jobs, "worker threads (default 1)")
      ->check(CLI::PositiveNumber);
  add_char_opts(batch);
  add_output_opts(batch);

  auto* fetch = app.add_subcommand("fetch", "download a corpus list into canonical scheme files");
  fetch->add_option("list", o.input, "corpus list identifier")->required();
  fetch->add_option("--base-url", o.base_url,
                    "corpus base URL (default: the TWA_CORPUS_BASE_URL environment variable)");
  fetch->add_option("--out", o.fetch_out, "output directory (default .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(o);
    if (app.got_subcommand(info)) return cmd_info(o);
    if (app.got_subcommand(verify)) return cmd_verify(o);
    if (app.got_subcommand(batch)) return cmd_batch(o);
    if (app.got_subcommand(fetch)) return cmd_fetch(o);
  } catch (const twa::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable: a subcommand is required
}
