#include "spinxfer/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "spinxfer/errors.hpp"

namespace spinxfer::cli {

namespace {

using nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config key '" + path + "': " + what);
}

void reject_unknown(const json& object, const std::string& prefix,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) fail(join(prefix, key), "unknown key");
  }
}

const json& require_object(const json& value, const std::string& path) {
  if (!value.is_object()) fail(path, "expected an object");
  return value;
}

double number(const json& value, const std::string& path) {
  if (!value.is_number()) fail(path, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

double non_negative(const json& value, const std::string& path) {
  const double x = number(value, path);
  if (x < 0.0) fail(path, "must be non-negative");
  return x;
}

int integer(const json& value, const std::string& path) {
  if (!value.is_number_integer()) fail(path, "expected an integer");
  const auto x = value.get<std::int64_t>();
  if (x < -1'000'000'000 || x > 1'000'000'000) fail(path, "integer out of range");
  return static_cast<int>(x);
}

bool boolean(const json& value, const std::string& path) {
  if (!value.is_boolean()) fail(path, "expected true or false");
  return value.get<bool>();
}

std::string string(const json& value, const std::string& path) {
  if (!value.is_string()) fail(path, "expected a string");
  return value.get<std::string>();
}

complex amplitude(const json& value, const std::string& path) {
  if (value.is_number()) return {number(value, path), 0.0};
  if (value.is_array() && value.size() == 2) {
    return {number(value[0], path + "[0]"), number(value[1], path + "[1]")};
  }
  fail(path, "expected a number or [re, im]");
}

InputSpec parse_input(const json& value) {
  if (value.is_string()) {
    const auto name = value.get<std::string>();
    if (auto kind = parse_input_kind(name)) return *kind;
    fail("input", "expected TypeI, TypeII, TypeIII or a list of terms, got \"" + name + "\"");
  }
  if (!value.is_array() || value.empty()) fail("input", "expected a name or a non-empty list");
  std::vector<CustomTerm> terms;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string path = "input[" + std::to_string(i) + "]";
    const json& term = require_object(value[i], path);
    reject_unknown(term, path, {"state", "amplitude"});
    if (!term.contains("state")) fail(path + ".state", "missing");
    CustomTerm t{string(term["state"], path + ".state"), {1.0, 0.0}};
    if (term.contains("amplitude")) t.amplitude = amplitude(term["amplitude"], path + ".amplitude");
    terms.push_back(std::move(t));
  }
  return terms;
}

void parse_observable(const json& value, ObservableSelection& out) {
  require_object(value, "observable");
  reject_unknown(value, "observable", {"measure", "target", "eof_sites", "probe"});
  if (value.contains("measure")) {
    const auto m = string(value["measure"], "observable.measure");
    if (m == "fidelity") out.measure = Measure::Fidelity;
    else if (m == "eof") out.measure = Measure::Eof;
    else fail("observable.measure", "expected fidelity or eof");
  }
  if (value.contains("target")) {
    const auto t = string(value["target"], "observable.target");
    if (t == "initial") out.target = TargetKind::Initial;
    else if (t == "mirrored") out.target = TargetKind::Mirrored;
    else fail("observable.target", "expected initial or mirrored");
  }
  if (value.contains("eof_sites")) {
    const json& sites = value["eof_sites"];
    if (!sites.is_array() || sites.size() != 2) fail("observable.eof_sites", "expected [a, b]");
    out.eof_sites = SitePair{integer(sites[0], "observable.eof_sites[0]"),
                             integer(sites[1], "observable.eof_sites[1]")};
  }
  if (value.contains("probe")) {
    const auto p = string(value["probe"], "observable.probe");
    if (p == "first_revival") out.probe = ProbeTime::FirstRevival;
    else if (p == "first_transfer") out.probe = ProbeTime::FirstTransfer;
    else fail("observable.probe", "expected first_revival or first_transfer");
  }
}

} // namespace

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_object(doc, "<root>");
  reject_unknown(doc, "", {"N", "chain_length", "max_excitations", "input", "profile", "j0",
                           "eta", "epsilon", "gamma", "delta", "chi", "seed",
                           "chi_cross_sector", "chi_diagonal", "time", "observable",
                           "realisations", "sweep"});

  ExperimentConfig config;
  if (doc.contains("N") && doc.contains("chain_length")) {
    fail("chain_length", "give either N or chain_length, not both");
  }
  if (doc.contains("N")) config.chain_length = integer(doc["N"], "N");
  else if (doc.contains("chain_length")) config.chain_length = integer(doc["chain_length"], "chain_length");
  else fail("N", "missing required chain length (N or chain_length)");
  if (config.chain_length < kMinChainLength || config.chain_length > kMaxChainLength) {
    fail("N", "must lie in [2, 20]");
  }

  if (doc.contains("max_excitations")) {
    config.max_excitations = integer(doc["max_excitations"], "max_excitations");
    if (config.max_excitations < 0 || config.max_excitations > config.chain_length) {
      fail("max_excitations", "must lie in [0, N]");
    }
  }
  if (doc.contains("input")) config.input = parse_input(doc["input"]);
  if (const auto* kind = std::get_if<InputKind>(&config.input);
      kind && config.max_excitations < required_excitations(*kind)) {
    fail("max_excitations", std::string(to_string(*kind)) + " input needs at least " +
                                std::to_string(required_excitations(*kind)) + " excitations");
  }
  if (doc.contains("profile") && string(doc["profile"], "profile") != "pst") {
    fail("profile", "only the perfect-transfer profile \"pst\" is supported");
  }
  if (doc.contains("j0")) {
    config.j0 = number(doc["j0"], "j0");
    if (!(config.j0 > 0.0)) fail("j0", "must be positive");
  }

  auto& p = config.perturbation;
  if (doc.contains("eta")) p.eta = non_negative(doc["eta"], "eta");
  if (doc.contains("gamma")) p.gamma = non_negative(doc["gamma"], "gamma");
  if (doc.contains("delta")) p.delta = non_negative(doc["delta"], "delta");
  if (doc.contains("chi")) p.chi = non_negative(doc["chi"], "chi");
  if (doc.contains("epsilon")) {
    const json& eps = doc["epsilon"];
    if (eps.is_array()) {
      if (eps.size() != static_cast<std::size_t>(config.chain_length)) {
        fail("epsilon", "list must have N entries");
      }
      for (std::size_t i = 0; i < eps.size(); ++i) {
        p.epsilon.push_back(number(eps[i], "epsilon[" + std::to_string(i) + "]"));
      }
    } else {
      p.epsilon = {number(eps, "epsilon")};
    }
  }
  if (doc.contains("seed")) {
    const json& seed = doc["seed"];
    if (!seed.is_number_unsigned()) fail("seed", "expected an unsigned 64-bit integer");
    p.seed = seed.get<std::uint64_t>();
  }
  if (doc.contains("chi_cross_sector")) p.chi_cross_sector = boolean(doc["chi_cross_sector"], "chi_cross_sector");
  if (doc.contains("chi_diagonal")) p.chi_diagonal = boolean(doc["chi_diagonal"], "chi_diagonal");

  if (doc.contains("time")) {
    const json& time = require_object(doc["time"], "time");
    reject_unknown(time, "time", {"points", "span"});
    if (time.contains("points")) {
      const int points = integer(time["points"], "time.points");
      if (points < 1) fail("time.points", "must be at least 1");
      config.time.points = static_cast<std::size_t>(points);
    }
    if (time.contains("span")) {
      config.time.span_in_ts = number(time["span"], "time.span");
      if (!(config.time.span_in_ts > 0.0)) fail("time.span", "must be positive");
    }
  }
  if (doc.contains("observable")) parse_observable(doc["observable"], config.observable);
  if (doc.contains("realisations")) {
    config.realisations = integer(doc["realisations"], "realisations");
    if (config.realisations < 1) fail("realisations", "must be at least 1");
  }
  if (doc.contains("sweep")) {
    const json& sweep = require_object(doc["sweep"], "sweep");
    reject_unknown(sweep, "sweep", {"n"});
    if (sweep.contains("n")) {
      if (!sweep["n"].is_array()) fail("sweep.n", "expected a list of chain lengths");
      for (std::size_t i = 0; i < sweep["n"].size(); ++i) {
        config.sweep_n.push_back(integer(sweep["n"][i], "sweep.n[" + std::to_string(i) + "]"));
      }
    }
  }

  config.validate();
  return config;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

nlohmann::json to_json(const ExperimentConfig& config) {
  json doc;
  doc["N"] = config.chain_length;
  doc["max_excitations"] = config.max_excitations;
  if (const auto* kind = std::get_if<InputKind>(&config.input)) {
    doc["input"] = std::string(to_string(*kind));
  } else {
    json terms = json::array();
    for (const auto& t : std::get<std::vector<CustomTerm>>(config.input)) {
      terms.push_back({{"state", t.bits}, {"amplitude", {t.amplitude.real(), t.amplitude.imag()}}});
    }
    doc["input"] = terms;
  }
  doc["profile"] = "pst";
  doc["j0"] = config.j0;
  const auto& p = config.perturbation;
  doc["eta"] = p.eta;
  if (p.epsilon.size() == 1) doc["epsilon"] = p.epsilon[0];
  else if (p.epsilon.empty()) doc["epsilon"] = 0.0;
  else doc["epsilon"] = p.epsilon;
  doc["gamma"] = p.gamma;
  doc["delta"] = p.delta;
  doc["chi"] = p.chi;
  doc["seed"] = p.seed;
  doc["chi_cross_sector"] = p.chi_cross_sector;
  doc["chi_diagonal"] = p.chi_diagonal;
  doc["time"] = {{"points", config.time.points}, {"span", config.time.span_in_ts}};
  json observable = json::object();
  const auto& o = config.observable;
  if (o.measure) observable["measure"] = std::string(to_string(*o.measure));
  if (o.target) observable["target"] = std::string(to_string(*o.target));
  if (o.eof_sites) observable["eof_sites"] = {o.eof_sites->first, o.eof_sites->second};
  if (o.probe) observable["probe"] = std::string(to_string(*o.probe));
  doc["observable"] = observable;
  doc["realisations"] = config.realisations;
  if (!config.sweep_n.empty()) doc["sweep"] = {{"n", config.sweep_n}};
  return doc;
}

} // namespace spinxfer::cli
