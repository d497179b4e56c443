// Copyright 2026 The Stingy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "stingy/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <filesystem>
#include <optional>
#include <random>
#include <regex>

#include "stingy/io.hpp"
#include "stingy/stingy.hpp"

namespace stingy::cli {

namespace {

using io::Json;

std::string num(double v) { return fmt::format("{}", v); }

Json value_json(const StinginessValue<double>& v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

std::string value_text(const StinginessValue<double>& v) { return v.is_infinite() ? "inf" : num(v.value()); }

std::string set_text(const std::vector<int>& xs) {
  return "{" + fmt::format("{}", fmt::join(xs, ", ")) + "}";
}

std::vector<int> kept_bit_list(const MeasureWitness<double>& w) {
  std::vector<int> bits;
  const int k = w.minimizing_subset->kept_count();
  for (int j = 0; j < k; ++j) bits.push_back(int((w.minimizing_kept_bits >> (k - 1 - j)) & 1u));
  return bits;
}

Json witness_json(const MeasureWitness<double>& w) {
  if (!w.minimizing_subset) return nullptr;
  Json j;
  j["lost"] = w.minimizing_subset->lost();
  j["kept"] = w.minimizing_subset->kept();
  j["kept_bits"] = kept_bit_list(w);
  j["distance"] = w.distance;
  return j;
}

std::string witness_text(const MeasureWitness<double>& w) {
  if (!w.minimizing_subset) return "witness: none (every qubit lost)";
  std::string bits;
  for (int b : kept_bit_list(w)) bits += char('0' + b);
  return fmt::format("witness: lost = {}, kept = {}, kept bits = {}, distance = {}",
                     set_text(w.minimizing_subset->lost()), set_text(w.minimizing_subset->kept()), bits,
                     num(w.distance));
}

std::string file_label(const std::string& path) { return std::filesystem::path(path).filename().string(); }

/// Shared --state/--basis/--m/--distance/--threads handling.
struct MeasureArgs {
  std::string state_path;
  std::string basis_path;
  int m = 0;
  std::string distance = "trace";
  int threads = 1;

  void bind(CLI::App* cmd, bool needs_state = true) {
    if (needs_state) cmd->add_option("--state", state_path, "StateFile (JSON)")->required();
    cmd->add_option("--basis", basis_path, "BasisFile (JSON); computational basis if absent");
    cmd->add_option("--m", m, "number of lost qubits")->required();
    cmd->add_option("--distance", distance, "distance measure")->check(CLI::IsMember({"trace", "hs"}));
    cmd->add_option("--threads", threads, "worker threads for the minimization")->check(CLI::PositiveNumber);
  }

  ProductBasis<double> basis(int n) const {
    if (basis_path.empty()) return computational_basis<double>(n);
    return io::basis_from_json(io::read_json(basis_path));
  }

  std::string basis_label() const { return basis_path.empty() ? "computational" : file_label(basis_path); }

  DistanceMeasure measure() const { return *parse_distance(distance); }

  Json echo(int n) const {
    Json j;
    if (!state_path.empty()) j["state"] = file_label(state_path);
    j["n"] = n;
    j["m"] = m;
    j["distance"] = distance;
    j["basis"] = basis_label();
    return j;
  }
};

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

int cmd_sq(const MeasureArgs& a, bool json, std::ostream& out) {
  const auto rho = io::as_density(io::state_from_json(io::read_json(a.state_path)));
  const int n = rho.qubits();
  const auto w = s_quantum(rho, a.m, a.basis(n), a.measure(), {a.threads});
  if (json) {
    Json j{{"command", "sq"}};
    j.update(a.echo(n));
    j["value"] = value_json(w.value);
    j["witness"] = witness_json(w);
    emit_json(out, j);
  } else {
    fmt::print(out, "S_Q = {}\n", value_text(w.value));
    fmt::print(out, "state: {} (n = {}), m = {}, distance = {}, basis = {}\n", file_label(a.state_path), n, a.m,
               a.distance, a.basis_label());
    fmt::print(out, "{}\n", witness_text(w));
  }
  return kOk;
}

int cmd_free(const MeasureArgs& a, double threshold, bool json, std::ostream& out) {
  const auto rho = io::as_density(io::state_from_json(io::read_json(a.state_path)));
  const int n = rho.qubits();
  const auto spec = make_free_set_spec(a.m, threshold, a.basis(n), a.measure());
  const auto verdict = is_free(rho, spec, {a.threads});
  if (json) {
    Json j{{"command", "free"}};
    j.update(a.echo(n));
    j["threshold"] = threshold;
    j["free"] = verdict.free;
    j["value"] = value_json(verdict.witness.value);
    j["witness"] = witness_json(verdict.witness);
    emit_json(out, j);
  } else {
    fmt::print(out, "{}\n", verdict.free ? "FREE" : "NOT-FREE");
    fmt::print(out, "S_Q = {} {} {}\n", value_text(verdict.witness.value), verdict.free ? "<=" : ">", num(threshold));
    fmt::print(out, "state: {} (n = {}), m = {}, distance = {}, basis = {}\n", file_label(a.state_path), n, a.m,
               a.distance, a.basis_label());
  }
  return kOk;
}

struct FalsifyArgs {
  std::string channel_path;
  double threshold = 0;
  int samples = 500;
  std::uint64_t seed = 0;
  std::string out_path = "witness.json";
};

int cmd_falsify(const MeasureArgs& a, const FalsifyArgs& f, bool json, std::ostream& out) {
  const auto channel = io::channel_from_json(io::read_json(f.channel_path));
  const int n = channel.qubits();
  const auto spec = make_free_set_spec(a.m, f.threshold, a.basis(n), a.measure());
  SamplerConfig cfg;
  cfg.max_samples = f.samples;
  cfg.seed = f.seed;
  const auto verdict = falsify_free_operation(channel, spec, cfg, {a.threads});

  Json j{{"command", "falsify"}, {"channel", file_label(f.channel_path)}};
  j.update(a.echo(n));
  j["threshold"] = f.threshold;
  j["samples"] = f.samples;
  j["seed"] = f.seed;
  int code = kOk;
  std::string text;
  if (const auto* v = std::get_if<ViolationFound<double>>(&verdict)) {
    io::write_json(f.out_path, io::state_to_json(v->input_state));
    j["verdict"] = "ViolationFound";
    j["draw"] = v->draw;
    j["input_value"] = value_json(v->input_value);
    j["output_value"] = value_json(v->output_value);
    j["witness_file"] = f.out_path;
    text = fmt::format(
        "verdict: ViolationFound at draw {}\ninput S_Q = {} <= {}\noutput S_Q = {} > {}\nwitness input written to {}\n",
        v->draw, value_text(v->input_value), num(f.threshold), value_text(v->output_value), num(f.threshold),
        f.out_path);
    code = kViolationFound;
  } else if (const auto* v = std::get_if<NoViolationFound>(&verdict)) {
    j["verdict"] = "NoViolationFound";
    j["samples_tested"] = v->samples_tested;
    j["samples_drawn"] = v->samples_drawn;
    text = fmt::format("verdict: NoViolationFound({}) after {} draws\n", v->samples_tested, v->samples_drawn);
  } else {
    const auto& none = std::get<NoFreeSamplesFound>(verdict);
    j["verdict"] = "NoFreeSamplesFound";
    j["samples_drawn"] = none.samples_drawn;
    text = fmt::format("verdict: NoFreeSamplesFound ({} draws, none free)\n", none.samples_drawn);
    code = kNoFreeSamples;
  }
  if (json)
    emit_json(out, j);
  else
    out << text;
  return code;
}

int cmd_sc(std::int64_t teeth, std::int64_t broken, bool json, std::ostream& out) {
  const auto r = s_classical(ClassicalComb(teeth, broken));
  const std::string exact = r.den == 1 ? std::to_string(r.num) : fmt::format("{}/{}", r.num, r.den);
  if (json) {
    Json j{{"command", "sc"}, {"teeth", teeth}, {"broken", broken}, {"exact", exact}, {"value", r.value()}};
    emit_json(out, j);
  } else {
    fmt::print(out, "S_C = {} ({})\n", exact, num(r.value()));
  }
  return kOk;
}

io::LoadedState generate(const std::string& kind, int n, std::uint64_t seed) {
  static const std::regex basis_re(R"(basis\((\d+)\))");
  std::smatch match;
  if (kind == "ginibre") {
    std::mt19937_64 rng(seed);
    return ginibre_density<double>(n, rng);
  }
  if (kind == "maximally-mixed") {
    detail::check_register(n, kDefaultMaxQubits);
    const Eigen::Index d = detail::dim_of(n);
    return make_density<double>(CMatrix<double>::Identity(d, d) / double(d), n);
  }
  if (kind == "bell") {
    if (n < 2) throw Error(ErrorCode::BadParams, "bell needs at least two qubits");
    detail::check_register(n, kDefaultMaxQubits);
    CVector<double> v = CVector<double>::Zero(detail::dim_of(n));
    v(0) = v(v.size() - 1) = 1 / std::sqrt(2.0);
    return make_pure(std::move(v), n);
  }
  if (std::regex_match(kind, match, basis_re)) {
    return basis_state(computational_basis<double>(n), std::stoull(match[1].str()));
  }
  throw Error(ErrorCode::BadParams, "unknown state kind '" + kind + "'");
}

void write_or_print(const std::string& path, const Json& j, std::ostream& out) {
  if (path.empty())
    emit_json(out, j);
  else
    io::write_json(path, j);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stinginess measures, free-state membership and free-operation falsifier", "stingy"};
  app.require_subcommand(1);

  std::string format = "text";
  auto add_format = [&format](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  };

  MeasureArgs measure;
  double threshold = 0;
  FalsifyArgs falsify;

  auto* sq = app.add_subcommand("sq", "quantum stinginess of a state");
  measure.bind(sq);
  add_format(sq);

  auto* free = app.add_subcommand("free", "free-set membership of a state");
  measure.bind(free);
  free->add_option("--threshold", threshold, "free-set threshold")->required();
  add_format(free);

  auto* fals = app.add_subcommand("falsify", "search for a free state mapped outside the free set");
  measure.bind(fals, false);
  fals->add_option("--channel", falsify.channel_path, "ChannelFile (JSON)")->required();
  fals->add_option("--threshold", falsify.threshold, "free-set threshold")->required();
  fals->add_option("--samples", falsify.samples, "states to draw")->check(CLI::PositiveNumber);
  fals->add_option("--seed", falsify.seed, "sampler seed");
  fals->add_option("--out", falsify.out_path, "where to write a violating input state");
  add_format(fals);

  std::int64_t teeth = 0, broken = 0;
  auto* sc = app.add_subcommand("sc", "classical stinginess of a comb");
  sc->add_option("n", teeth, "number of teeth")->required();
  sc->add_option("broken", broken, "number of broken teeth")->required();
  add_format(sc);

  std::string kind, gen_out;
  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "write a StateFile");
  gen->add_option("--kind", kind, "ginibre | basis(i) | bell | maximally-mixed")->required();
  gen->add_option("--n", gen_n, "qubit count")->required();
  gen->add_option("--seed", gen_seed, "seed for random kinds");
  gen->add_option("--out", gen_out, "output path; stdout if absent");

  std::string apply_channel_path, apply_state_path, apply_out;
  auto* capply = app.add_subcommand("channel-apply", "apply a ChannelFile to a StateFile");
  capply->add_option("--channel", apply_channel_path, "ChannelFile (JSON)")->required();
  capply->add_option("--state", apply_state_path, "StateFile (JSON)")->required();
  capply->add_option("--out", apply_out, "output path; stdout if absent");

  std::vector<const char*> argv{"stingy"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  const bool json = format == "json";
  try {
    if (sq->parsed()) return cmd_sq(measure, json, out);
    if (free->parsed()) return cmd_free(measure, threshold, json, out);
    if (fals->parsed()) return cmd_falsify(measure, falsify, json, out);
    if (sc->parsed()) return cmd_sc(teeth, broken, json, out);
    if (gen->parsed()) {
      write_or_print(gen_out, io::state_to_json(generate(kind, gen_n, gen_seed)), out);
      return kOk;
    }
    if (capply->parsed()) {
      const auto ch = io::channel_from_json(io::read_json(apply_channel_path));
      const auto rho = io::as_density(io::state_from_json(io::read_json(apply_state_path)));
      write_or_print(apply_out, io::state_to_json(apply_channel(ch, rho)), out);
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace stingy::cli
