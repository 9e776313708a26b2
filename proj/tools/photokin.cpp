#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "photokin/photokin.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitPhysics = 3;
constexpr int kExitIo = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw photokin::IoError("cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

photokin::Scenario parse_or_exit(const std::string& path) {
  const std::string text = read_file(path);
  auto result = photokin::parse_scenario(text);
  if (!result.ok()) {
    for (const auto& err : result.errors) std::cerr << path << ":" << err.to_string() << "\n";
    std::exit(kExitParse);
  }
  return *result.scenario;
}

photokin::Constants load_constants(const std::string& path) {
  if (path.empty()) return photokin::default_constants();
  return photokin::Constants::from_file(path);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"photokin: photon emission rates, absorption and scattering cross sections"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, format_override, constants_path, prefix = "photokin";

  auto* run = app.add_subcommand("run", "run a scenario sweep and emit the spectrum table");
  run->add_option("scenario", scenario_path, "scenario file")->required();
  run->add_option("--out", out_path, "output path (default: scenario output.path or stdout)");
  run->add_option("--format", format_override, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--constants", constants_path, "key=value constants override file");

  auto* bands = app.add_subcommand("bands", "export band structure, Bloch factors and DOS");
  bands->add_option("scenario", scenario_path, "scenario file")->required();
  bands->add_option("--out-prefix", prefix, "output file prefix");
  bands->add_option("--constants", constants_path, "key=value constants override file");

  auto* chk = app.add_subcommand("check", "run the invariant suite on the scenario's objects");
  chk->add_option("scenario", scenario_path, "scenario file")->required();
  chk->add_option("--constants", constants_path, "key=value constants override file");

  CLI11_PARSE(app, argc, argv);

  try {
    const photokin::Constants kc = load_constants(constants_path);

    if (run->parsed()) {
      const auto sc = parse_or_exit(scenario_path);
      const auto table = photokin::run_scan(sc, kc);
      const std::string format = format_override.empty() ? sc.format : format_override;
      const std::string dest = out_path.empty() ? sc.path : out_path;
      if (dest.empty())
        std::cout << table.to_string(format);
      else
        table.write_file(dest, format);
      return kExitOk;
    }
    if (bands->parsed()) {
      const auto sc = parse_or_exit(scenario_path);
      photokin::export_band_structure(sc, prefix, kc);
      return kExitOk;
    }
    if (chk->parsed()) {
      const auto sc = parse_or_exit(scenario_path);
      return photokin::run_checks(sc, std::cout, kc) ? kExitOk : kExitPhysics;
    }
  } catch (const photokin::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const photokin::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPhysics;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPhysics;
  }
  return kExitOk;
}
