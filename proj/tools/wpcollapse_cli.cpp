// Command-line front end; talks to the library exclusively through the
// C API in wpcollapse.h.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "wpcollapse.h"

namespace {

int fail_with(const char* what, wpc_status rc) {
  std::cerr << what << ": " << wpc_last_error() << " (code " << rc << ")\n";
  // validation-style errors exit 1, numerical errors exit 2
  switch (rc) {
    case WPC_ERR_DIMENSION_MISMATCH:
    case WPC_ERR_BAD_INPUT:
    case WPC_ERR_IO:
    case WPC_ERR_NOT_IN_SIEGEL_SET:
      return 1;
    default:
      return 2;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content << "\n";
  else
    write_atomic(out_path, content);
}

struct Owned {
  char* s = nullptr;
  ~Owned() { wpc_string_free(s); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Siegel-space collapse toolkit"};
  app.require_subcommand(1);

  std::string in_path, in_path_b, out_path, config_path, format = "both", kind = "siegel",
              suite = "all";
  int g = 2, gprime = 1, samples = 40, n_max = 12;
  double u = 2.0, R = 1.0;
  std::uint64_t seed = 0;

  auto* cmd_reduce = app.add_subcommand("reduce", "reduce an SPD imaginary part into the Siegel set");
  cmd_reduce->add_option("--in", in_path, "input point JSON")->required();
  cmd_reduce->add_option("--out", out_path, "output path (stdout if omitted)");
  cmd_reduce->add_option("--u", u, "Siegel parameter");

  auto* cmd_dist = app.add_subcommand("dist", "distance between two JSON points");
  cmd_dist->add_option("--in", in_path, "first point JSON")->required();
  cmd_dist->add_option("--in2", in_path_b, "second point JSON")->required();
  cmd_dist->add_option("--kind", kind, "siegel|tropical|base");
  cmd_dist->add_option("--gprime", gprime, "boundary rank (base distance)");
  cmd_dist->add_option("--out", out_path, "output path");

  auto* cmd_project = app.add_subcommand("project", "horospherical projection");
  cmd_project->add_option("--in", in_path, "input point JSON")->required();
  cmd_project->add_option("--gprime", gprime, "boundary rank")->required();
  cmd_project->add_option("--out", out_path, "output path");

  auto* cmd_fiber = app.add_subcommand("fiber-diam", "fiber diameter estimate and bound");
  cmd_fiber->add_option("--in", in_path, "input point JSON")->required();
  cmd_fiber->add_option("--gprime", gprime, "boundary rank")->required();
  cmd_fiber->add_option("--u", u, "Siegel parameter");
  cmd_fiber->add_option("--samples", samples, "fiber samples");
  cmd_fiber->add_option("--seed", seed, "RNG seed");
  cmd_fiber->add_option("--out", out_path, "output path");

  auto* cmd_run = app.add_subcommand("collapse-run", "run a degeneration experiment");
  cmd_run->add_option("--config", config_path, "experiment config JSON");
  cmd_run->add_option("--g", g, "genus (used when no config given)");
  cmd_run->add_option("--gprime", gprime, "boundary rank");
  cmd_run->add_option("--u", u, "Siegel parameter");
  cmd_run->add_option("--R", R, "ball radius");
  cmd_run->add_option("--samples", samples, "ball samples");
  cmd_run->add_option("--seed", seed, "RNG seed");
  cmd_run->add_option("--n-max", n_max, "last sequence index");
  cmd_run->add_option("--format", format, "json|csv|both");
  cmd_run->add_option("--out", out_path, "output directory")->required();

  auto* cmd_verify = app.add_subcommand("verify", "run validation suites");
  cmd_verify->add_option("--suite", suite, "g1|g2|properties|all");
  cmd_verify->add_option("--out", out_path, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_reduce->parsed()) {
      Owned out;
      wpc_status rc = wpc_cmd_reduce(read_file(in_path).c_str(), u, &out.s);
      if (rc != WPC_OK) return fail_with("reduce", rc);
      emit(out_path, out.s);
    } else if (cmd_dist->parsed()) {
      std::string req = std::string("{\"kind\":\"") + kind + "\",\"gprime\":" +
                        std::to_string(gprime) + ",\"a\":" + read_file(in_path) +
                        ",\"b\":" + read_file(in_path_b) + "}";
      Owned out;
      wpc_status rc = wpc_cmd_dist(req.c_str(), &out.s);
      if (rc != WPC_OK) return fail_with("dist", rc);
      emit(out_path, out.s);
    } else if (cmd_project->parsed()) {
      Owned out;
      wpc_status rc = wpc_cmd_project(read_file(in_path).c_str(), gprime, &out.s);
      if (rc != WPC_OK) return fail_with("project", rc);
      emit(out_path, out.s);
    } else if (cmd_fiber->parsed()) {
      Owned out;
      wpc_status rc =
          wpc_cmd_fiber_diam(read_file(in_path).c_str(), gprime, u, samples, seed, &out.s);
      if (rc != WPC_OK) return fail_with("fiber-diam", rc);
      emit(out_path, out.s);
    } else if (cmd_run->parsed()) {
      std::string cfg;
      if (!config_path.empty()) {
        cfg = read_file(config_path);
      } else {
        cfg = "{\"spec\":{\"g\":" + std::to_string(g) + ",\"gprime\":" +
              std::to_string(gprime) + ",\"u\":" + std::to_string(u) + ",\"seed\":" +
              std::to_string(seed) + "},\"R\":" + std::to_string(R) + ",\"samples\":" +
              std::to_string(samples) + ",\"n_max\":" + std::to_string(n_max) + "}";
      }
      Owned js, csv;
      wpc_status rc = wpc_collapse_run(cfg.c_str(), &js.s, &csv.s);
      if (rc != WPC_OK) return fail_with("collapse-run", rc);
      namespace fs = std::filesystem;
      fs::create_directories(out_path);
      if (format == "json" || format == "both")
        write_atomic((fs::path(out_path) / "report.json").string(), js.s);
      if (format == "csv" || format == "both")
        write_atomic((fs::path(out_path) / "report.csv").string(), csv.s);
      if (format != "json" && format != "csv" && format != "both") {
        std::cerr << "unknown --format " << format << "\n";
        return 1;
      }
    } else if (cmd_verify->parsed()) {
      Owned out;
      wpc_status rc = wpc_run_suite(suite.c_str(), &out.s);
      if (rc != WPC_OK) return fail_with("verify", rc);
      emit(out_path, out.s);
      std::string s = out.s;
      if (s.find("\"pass\": false") != std::string::npos) return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
