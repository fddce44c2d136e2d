#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stegpat/catalog/catalog_io.hpp"
#include "stegpat/catalog/seed.hpp"
#include "stegpat/covers/cover_io.hpp"
#include "stegpat/embed/codec.hpp"
#include "stegpat/netsim/indirect.hpp"
#include "stegpat/netsim/netsim_io.hpp"
#include "stegpat/warden.hpp"

namespace stegpat::cli {

struct CommandOutcome {
  int exit_code = 0;
  std::string stdout_payload;
  std::vector<std::string> diagnostics;
};

inline int exit_code_for(Errc e) {
  switch (e) {
    case Errc::ParseError:
    case Errc::Io:
    case Errc::InvalidScript: return 3;
    case Errc::InsufficientCapacity:
    case Errc::FrameError: return 4;
    case Errc::AmbiguousKey: return 1;
    default: return 2;
  }
}

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << data)) throw Error(Errc::Io, "cannot write '" + path + "'");
}

inline std::string extension(const std::string& path) { return std::filesystem::path(path).extension().string(); }

inline std::string sidecar_path(const std::string& path) { return path + ".style.json"; }

/// Carrier type follows the file extension: .jsonl flow, .pgm image, .txt text
/// (with an optional "<file>.style.json" sidecar).
inline CoverObject load_cover(const std::string& path) {
  const auto ext = extension(path);
  if (ext == ".jsonl") return load_flow(read_file(path));
  if (ext == ".pgm") return load_image(read_file(path));
  if (ext == ".txt") {
    const auto side = sidecar_path(path);
    return load_text(read_file(path), std::filesystem::exists(side) ? read_file(side) : std::string());
  }
  throw Error(Errc::InvalidParams, "cannot tell the carrier type of '" + path + "' (.jsonl, .txt or .pgm)");
}

inline void save_cover(const std::string& path, const CoverObject& c) {
  const auto ext = extension(path);
  if (auto* f = std::get_if<PacketFlow>(&c)) {
    if (ext != ".jsonl") throw Error(Errc::InvalidParams, "a flow must be written to a .jsonl file");
    write_file(path, save_flow(*f));
  } else if (auto* img = std::get_if<ImageBuffer>(&c)) {
    if (ext != ".pgm") throw Error(Errc::InvalidParams, "an image must be written to a .pgm file");
    write_file(path, save_image(*img));
  } else {
    if (ext != ".txt") throw Error(Errc::InvalidParams, "text must be written to a .txt file");
    const auto files = save_text(std::get<TextDocument>(c));
    write_file(path, files.text);
    const auto side = sidecar_path(path);
    if (!files.sidecar.empty()) write_file(side, files.sidecar);
    else if (std::filesystem::exists(side)) std::filesystem::remove(side);
  }
}

inline nlohmann::json load_json_file(const std::string& path) { return stegpat::detail::parse_json_document(read_file(path)); }

// Flags shared by capacity, embed and extract.
struct SpecFlags {
  std::string pattern, binding, mode, params, spec;
  std::optional<std::uint64_t> seed;

  void add(CLI::App* cmd) {
    cmd->add_option("--pattern", pattern, "pattern ID or name, e.g. EN4 or \"Message Ordering\"");
    cmd->add_option("--binding", binding, "carrier binding, e.g. field:ttl, option:A, char:*, spaces");
    cmd->add_option("--mode", mode, "EN4 mode: plain, reserved, random, blind");
    cmd->add_option("--params", params, "JSON file with the parameter record");
    cmd->add_option("--spec", spec, "JSON file with a complete spec (pattern, binding, mode, params)");
    cmd->add_option("--seed", seed, "PRNG seed for random state/value modulation");
  }

  PatternSpec build() const {
    nlohmann::json j = spec.empty() ? nlohmann::json::object() : load_json_file(spec);
    if (!j.is_object()) throw Error(Errc::InvalidParams, "spec file must hold a JSON object");
    if (!pattern.empty()) {
      // Accept catalog names and aliases as well as IDs.
      const Catalog catalog = seed_catalog();
      j["pattern"] = format_pattern_id(resolve(catalog, pattern).id);
    }
    if (!j.contains("pattern")) throw Error(Errc::InvalidParams, "--pattern or --spec is required");
    if (!binding.empty()) j["binding"] = binding;
    if (!mode.empty()) j["mode"] = mode;
    if (!params.empty()) j["params"] = load_json_file(params);
    if (seed) {
      if (!j.contains("params")) j["params"] = nlohmann::json::object();
      j["params"]["prng_seed"] = *seed;
    }
    return spec_from_json(j);
  }
};

}  // namespace detail

/// Runs one command line (argv[0] is the program name). Never throws.
inline CommandOutcome run(const std::vector<std::string>& argv) {
  CommandOutcome outcome;
  std::ostringstream out;

  CLI::App app{"Network steganography hiding patterns: catalog, codecs, channel simulator, warden"};
  app.require_subcommand(1);

  // patterns
  auto* patterns = app.add_subcommand("patterns", "browse and validate the pattern catalog");
  patterns->require_subcommand(1);
  std::string catalog_file, kind, show_key, validate_file;
  auto* p_list = patterns->add_subcommand("list", "list pattern IDs");
  p_list->add_option("--kind", kind, "embedding or representation")->check(CLI::IsMember({"embedding", "representation"}));
  p_list->add_option("--catalog", catalog_file, "catalog file (default: built-in)");
  auto* p_show = patterns->add_subcommand("show", "print one record as JSON");
  p_show->add_option("key", show_key, "ID, name or alias")->required();
  p_show->add_option("--catalog", catalog_file, "catalog file (default: built-in)");
  auto* p_validate = patterns->add_subcommand("validate", "check a catalog file");
  p_validate->add_option("file", validate_file)->required();
  auto* p_export = patterns->add_subcommand("export", "write the built-in catalog");

  // codecs
  detail::SpecFlags cap_flags, emb_flags, ext_flags;
  std::string cap_carrier, emb_carrier, emb_message, emb_out, ext_carrier, ext_trace, ext_represent;
  auto* capacity_cmd = app.add_subcommand("capacity", "raw bit budget of a carrier (16 bits go to the length frame)");
  cap_flags.add(capacity_cmd);
  capacity_cmd->add_option("--carrier", cap_carrier)->required();
  auto* embed_cmd = app.add_subcommand("embed", "embed a message");
  emb_flags.add(embed_cmd);
  embed_cmd->add_option("--carrier", emb_carrier)->required();
  embed_cmd->add_option("--message", emb_message, "0x-prefixed hex")->required();
  embed_cmd->add_option("--out", emb_out)->required();
  auto* extract_cmd = app.add_subcommand("extract", "extract a message from a stego carrier or a trace");
  ext_flags.add(extract_cmd);
  auto* ext_carrier_opt = extract_cmd->add_option("--carrier", ext_carrier);
  auto* ext_trace_opt = extract_cmd->add_option("--trace", ext_trace, "observation trace (.jsonl)");
  extract_cmd->add_option("--represent", ext_represent, "decoder JSON file, used with --trace");
  ext_carrier_opt->excludes(ext_trace_opt);

  // simulate
  std::string sim_scenario, sim_cover, sim_stego, sim_channel, sim_out, sim_script_out;
  auto* simulate_cmd = app.add_subcommand("simulate", "run a scenario through the channel model");
  auto* scen_opt = simulate_cmd->add_option("--scenario", sim_scenario, "script (.jsonl)");
  auto* cover_opt = simulate_cmd->add_option("--cover", sim_cover, "cover flow; with --stego builds the script");
  simulate_cmd->add_option("--stego", sim_stego, "stego flow");
  simulate_cmd->add_option("--channel", sim_channel, "channel model (.json)")->required();
  simulate_cmd->add_option("--out", sim_out, "trace output; stdout when absent");
  simulate_cmd->add_option("--script-out", sim_script_out, "write the script that was run");
  scen_opt->excludes(cover_opt);

  // indirect
  std::string ind_embed, ind_represent, ind_channel, ind_message, ind_trace_out;
  std::optional<std::uint64_t> ind_seed;
  auto* indirect_cmd = app.add_subcommand("indirect", "embed, simulate and decode in one go");
  indirect_cmd->add_option("--embed", ind_embed, "embedding spec JSON file")->required();
  indirect_cmd->add_option("--represent", ind_represent, "decoder JSON file, or 'direct'")->required();
  indirect_cmd->add_option("--channel", ind_channel, "channel model (.json)")->required();
  indirect_cmd->add_option("--message", ind_message, "0x-prefixed hex")->required();
  indirect_cmd->add_option("--seed", ind_seed, "PRNG seed for random state/value modulation");
  indirect_cmd->add_option("--trace-out", ind_trace_out, "write the observation trace");

  // warden
  std::string w_metric, w_cover, w_stego, w_binding;
  double w_threshold = 0;
  auto* warden_cmd = app.add_subcommand("warden", "compare a statistic between cover and stego object");
  warden_cmd->add_option("--metric", w_metric)
      ->required()
      ->check(CLI::IsMember({"inter_arrival_variance", "value_lsb_bias", "whitespace_run_histogram"}));
  warden_cmd->add_option("--cover", w_cover)->required();
  warden_cmd->add_option("--stego", w_stego)->required();
  warden_cmd->add_option("--threshold", w_threshold)->required();
  warden_cmd->add_option("--binding", w_binding, "field for the LSB metric on flows (default field:ttl)");

  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    if (!args.empty()) args.pop_back();  // program name
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, err;
    const int code = app.exit(e, o, err);
    outcome.stdout_payload = o.str();
    if (!err.str().empty()) outcome.diagnostics.push_back(err.str());
    outcome.exit_code = code == 0 ? 0 : 2;
    return outcome;
  }

  try {
    if (patterns->parsed()) {
      const Catalog cat = catalog_file.empty() ? seed_catalog() : load_catalog(detail::read_file(catalog_file));
      if (p_list->parsed()) {
        for (const auto& r : cat.records) {
          if (kind == "embedding" && r.id.kind != PatternKind::Embedding) continue;
          if (kind == "representation" && r.id.kind != PatternKind::Representation) continue;
          out << format_pattern_id(r.id) << "\n";
        }
      } else if (p_show->parsed()) {
        out << stegpat::detail::record_to_json(resolve(cat, show_key)).dump(2) << "\n";
      } else if (p_validate->parsed()) {
        const auto violations = validate_catalog(load_catalog(detail::read_file(validate_file)));
        for (const auto& v : violations)
          out << to_string(v.kind) << "\t" << v.record << "\t" << v.detail << "\n";
        outcome.diagnostics.push_back(std::to_string(violations.size()) + " violation(s)");
        if (!violations.empty()) outcome.exit_code = 1;
      } else if (p_export->parsed()) {
        out << save_catalog(seed_catalog());
      }
    } else if (capacity_cmd->parsed()) {
      out << capacity(detail::load_cover(cap_carrier), cap_flags.build()) << "\n";
    } else if (embed_cmd->parsed()) {
      const auto spec = emb_flags.build();
      const auto result = embed(detail::load_cover(emb_carrier), parse_hex_message(emb_message), spec);
      detail::save_cover(emb_out, result.stego);
      nlohmann::ordered_json j;
      j["pattern"] = format_pattern_id(spec.pattern);
      j["bits_embedded"] = result.report.bits_embedded;
      j["payload_bits"] = result.report.payload_bits;
      j["capacity_bits"] = result.report.capacity_bits;
      j["handles_touched"] = result.report.handles_touched.size();
      out << j.dump() << "\n";
    } else if (extract_cmd->parsed()) {
      if (!ext_trace.empty()) {
        if (ext_represent.empty()) throw Error(Errc::InvalidParams, "--trace needs --represent");
        const auto decoder = netsim::decoder_from_json(detail::load_json_file(ext_represent));
        out << format_message(netsim::decode(netsim::load_trace(detail::read_file(ext_trace)), decoder)) << "\n";
      } else {
        if (ext_carrier.empty()) throw Error(Errc::InvalidParams, "extract needs --carrier or --trace");
        out << format_message(extract(detail::load_cover(ext_carrier), ext_flags.build())) << "\n";
      }
    } else if (simulate_cmd->parsed()) {
      netsim::ScenarioScript script;
      if (!sim_scenario.empty()) {
        script = netsim::load_script(detail::read_file(sim_scenario));
      } else {
        if (sim_cover.empty() || sim_stego.empty())
          throw Error(Errc::InvalidParams, "simulate needs --scenario or both --cover and --stego");
        script = netsim::script_from_flows(load_flow(detail::read_file(sim_cover)), load_flow(detail::read_file(sim_stego)));
      }
      const auto trace = netsim::simulate(script, netsim::load_channel(detail::read_file(sim_channel)));
      if (!sim_script_out.empty()) detail::write_file(sim_script_out, netsim::save_script(script));
      if (sim_out.empty()) out << netsim::save_trace(trace);
      else detail::write_file(sim_out, netsim::save_trace(trace));
    } else if (indirect_cmd->parsed()) {
      detail::SpecFlags flags;
      flags.spec = ind_embed;
      flags.seed = ind_seed;
      const auto spec = flags.build();
      const auto decoder = ind_represent == "direct" ? netsim::RepresentDecoder{netsim::DirectDecoder{}}
                                                     : netsim::decoder_from_json(detail::load_json_file(ind_represent));
      const auto r = netsim::run_indirect_channel(spec, decoder, netsim::load_channel(detail::read_file(ind_channel)),
                                                  parse_hex_message(ind_message));
      if (!ind_trace_out.empty()) detail::write_file(ind_trace_out, netsim::save_trace(r.trace));
      nlohmann::ordered_json j;
      j["sent"] = format_message(r.sent);
      j["recovered"] = format_message(r.recovered);
      j["embed_id"] = r.embed_id;
      j["represent_id"] = r.represent_id;
      j["observations"] = r.trace.observations.size();
      out << j.dump() << "\n";
    } else if (warden_cmd->parsed()) {
      const auto report = warden::regularity_score(detail::load_cover(w_cover), detail::load_cover(w_stego),
                                                   warden::metric_from_string(w_metric), w_threshold,
                                                   parse_binding(w_binding));
      out << warden::report_to_json(report).dump() << "\n";
    }
  } catch (const Error& e) {
    outcome.exit_code = exit_code_for(e.code());
    outcome.diagnostics.push_back(e.what());
    out.str("");
  } catch (const std::exception& e) {
    outcome.exit_code = 1;
    outcome.diagnostics.push_back(std::string("internal error: ") + e.what());
    out.str("");
  }
  outcome.stdout_payload = out.str();
  return outcome;
}

}  // namespace stegpat::cli
