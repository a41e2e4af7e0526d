#include "config.hpp"

#include <fstream>

#include "semcom/errors.hpp"
#include "semcom/io.hpp"

namespace semcom::cli {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) {
    throw ValidationError(std::string("missing field '") + field + "'");
  }
  return j.at(field);
}

double num_field(const json& j, const char* field) {
  const json& v = require(j, field);
  if (!v.is_number()) {
    throw ValidationError(std::string("field '") + field + "' must be a number");
  }
  return v.get<double>();
}

double num_field_or(const json& j, const char* field, double def) {
  if (!j.is_object() || !j.contains(field)) return def;
  return num_field(j, field);
}

std::uint64_t uint_field(const json& j, const char* field) {
  const json& v = require(j, field);
  if (!v.is_number_unsigned()) {
    throw ValidationError(std::string("field '") + field +
                          "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::uint64_t uint_field_or(const json& j, const char* field, std::uint64_t def) {
  if (!j.is_object() || !j.contains(field)) return def;
  return uint_field(j, field);
}

bool bool_field_or(const json& j, const char* field, bool def) {
  if (!j.is_object() || !j.contains(field)) return def;
  const json& v = j.at(field);
  if (!v.is_boolean()) {
    throw ValidationError(std::string("field '") + field + "' must be a boolean");
  }
  return v.get<bool>();
}

std::string string_field(const json& j, const char* field) {
  const json& v = require(j, field);
  if (!v.is_string()) {
    throw ValidationError(std::string("field '") + field + "' must be a string");
  }
  return v.get<std::string>();
}

std::vector<std::size_t> uint_array(const json& v, const char* field) {
  if (!v.is_array() || v.empty()) {
    throw ValidationError(std::string("field '") + field +
                          "' must be a non-empty array of non-negative integers");
  }
  std::vector<std::size_t> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number_unsigned()) {
      throw ValidationError(std::string("field '") + field +
                            "' must contain only non-negative integers");
    }
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

SystemSpec system_from_config(const json& j, json& echo) {
  const json& sys = require(j, "system");
  SystemSpec system;
  system.p_s = pmf_from_json(require(sys, "p_s"));
  system.p_x_given_s = conditional_from_json(require(sys, "p_x_given_s"));
  json channel_echo;
  system.channel = channel_from_config(require(sys, "channel"), channel_echo);
  system.validate();
  echo = system_echo(system, channel_echo);
  return system;
}

}  // namespace

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open config file '" + path + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    // nlohmann's message carries line/column diagnostics.
    throw ValidationError("config '" + path + "': " + e.what());
  }
}

Dmc channel_from_config(const json& j, json& echo) {
  if (j.is_object() && j.contains("rows")) {
    Dmc ch = dmc_from_json(j);
    echo = dmc_to_json(ch);
    return ch;
  }
  const std::string kind = string_field(j, "kind");
  StandardChannelSpec spec;
  spec.kind = kind;
  if (kind == "identity") {
    spec.q = static_cast<std::size_t>(uint_field_or(j, "q", 2));
    echo = json{{"kind", kind}, {"q", spec.q}};
  } else if (kind == "bsc") {
    spec.param = num_field(j, "p");
    echo = json{{"kind", kind}, {"p", spec.param}};
  } else if (kind == "bec") {
    spec.param = j.contains("epsilon") ? num_field(j, "epsilon")
                                       : num_field(j, "p");
    echo = json{{"kind", kind}, {"epsilon", spec.param}};
  } else if (kind == "qsc") {
    spec.q = static_cast<std::size_t>(uint_field(j, "q"));
    spec.param = j.contains("delta") ? num_field(j, "delta") : num_field(j, "p");
    echo = json{{"kind", kind}, {"q", spec.q}, {"delta", spec.param}};
  } else {
    throw ValidationError("field 'kind': unknown channel kind '" + kind +
                          "' (expected identity|bsc|bec|qsc)");
  }
  return make_standard(spec);
}

CapacityConfig parse_capacity_config(const json& j) {
  CapacityConfig cfg;
  json channel_echo;
  cfg.channel = channel_from_config(require(j, "channel"), channel_echo);
  cfg.tol = num_field_or(j, "tol", 1e-9);
  if (!(cfg.tol > 0.0)) throw ValidationError("field 'tol' must be > 0");
  cfg.max_iter = static_cast<std::size_t>(uint_field_or(j, "max_iter", 100000));
  if (cfg.max_iter < 1) throw ValidationError("field 'max_iter' must be >= 1");
  cfg.echo = json{{"channel", channel_echo},
                  {"tol", cfg.tol},
                  {"max_iter", cfg.max_iter}};
  return cfg;
}

RegionConfig parse_region_config(const json& j) {
  RegionConfig cfg;
  json sys_echo;
  cfg.system = system_from_config(j, sys_echo);
  if (j.contains("sweep")) {
    const json& sweep = j.at("sweep");
    if (sweep.contains("r_max")) cfg.r_max = num_field(sweep, "r_max");
    if (sweep.contains("rp_max")) cfg.rp_max = num_field(sweep, "rp_max");
    cfg.steps_r = static_cast<std::size_t>(uint_field_or(sweep, "steps_r", 40));
    cfg.steps_rp = static_cast<std::size_t>(uint_field_or(sweep, "steps_rp", 40));
  }
  cfg.echo = json{{"system", sys_echo}};
  return cfg;
}

TypicalityConfig parse_typicality_config(const json& j) {
  TypicalityConfig cfg;
  const bool has_p = j.is_object() && j.contains("p");
  const bool has_joint = j.is_object() && j.contains("joint_sx");
  if (has_p == has_joint) {
    throw ValidationError("typicality config needs exactly one of 'p' or 'joint_sx'");
  }
  cfg.eps = num_field_or(j, "eps", 0.2);
  if (!(cfg.eps > 0.0)) throw ValidationError("field 'eps' must be > 0");
  cfg.collect = bool_field_or(j, "collect", false);
  if (has_p) {
    cfg.p = pmf_from_json(j.at("p"));
    cfg.n = static_cast<std::size_t>(uint_field(j, "n"));
    if (cfg.n < 1) throw ValidationError("field 'n' must be >= 1");
    cfg.echo = json{{"p", pmf_to_json(*cfg.p)},
                    {"n", cfg.n},
                    {"eps", cfg.eps},
                    {"collect", cfg.collect}};
  } else {
    const json& joint = j.at("joint_sx");
    const json& rows = require(joint, "rows");
    if (!rows.is_array() || rows.empty()) {
      throw ValidationError("field 'joint_sx.rows' must be a non-empty array");
    }
    JointPmf table;
    table.dims = {rows.size(), 0};
    for (const auto& row : rows) {
      if (!row.is_array() || (table.dims[1] != 0 && row.size() != table.dims[1])) {
        throw ValidationError("field 'joint_sx.rows' must be a rectangular matrix");
      }
      table.dims[1] = row.size();
      for (const auto& v : row) {
        if (!v.is_number()) {
          throw ValidationError("field 'joint_sx.rows' must contain only numbers");
        }
        table.probs.push_back(v.get<double>());
      }
    }
    table.validate("joint_sx");
    const json& s_seq = require(j, "s_seq");
    if (!s_seq.is_array() || s_seq.empty()) {
      throw ValidationError("field 's_seq' must be a non-empty array");
    }
    for (const auto& v : s_seq) {
      if (!v.is_number_unsigned() || v.get<std::size_t>() >= table.dims[0]) {
        throw ValidationError("field 's_seq': letter outside the joint's S alphabet");
      }
      cfg.s_seq.push_back(static_cast<Letter>(v.get<std::size_t>()));
    }
    cfg.echo = json{{"joint_sx", joint},
                    {"s_seq", j.at("s_seq")},
                    {"eps", cfg.eps},
                    {"collect", cfg.collect}};
    cfg.joint_sx = std::move(table);
  }
  return cfg;
}

PartitionsConfig parse_partitions_config(const json& j) {
  PartitionsConfig cfg;
  cfg.num_messages = static_cast<std::size_t>(uint_field(j, "num_messages"));
  cfg.block_size = static_cast<std::size_t>(uint_field(j, "block_size"));
  cfg.echo = json{{"num_messages", cfg.num_messages},
                  {"block_size", cfg.block_size}};
  return cfg;
}

ExperimentConfig parse_experiment_config(const json& j,
                                         std::optional<std::uint64_t> seed_override,
                                         json& echo) {
  ExperimentConfig cfg;
  json sys_echo;
  cfg.system = system_from_config(j, sys_echo);
  cfg.blocklengths = uint_array(require(j, "blocklengths"), "blocklengths");
  cfg.num_semantics = static_cast<std::size_t>(uint_field_or(j, "num_semantics", 1));
  cfg.msgs_per_semantic =
      static_cast<std::size_t>(uint_field_or(j, "msgs_per_semantic", 1));
  if (j.contains("schedule")) {
    const json& sched = j.at("schedule");
    if (!sched.is_array()) {
      throw ValidationError("field 'schedule' must be an array");
    }
    for (const auto& e : sched) {
      SizeSchedule s;
      s.num_semantics = static_cast<std::size_t>(uint_field(e, "num_semantics"));
      s.msgs_per_semantic =
          static_cast<std::size_t>(uint_field(e, "msgs_per_semantic"));
      cfg.schedule.push_back(s);
    }
  }
  cfg.eps = num_field_or(j, "eps", 0.2);
  cfg.trials = static_cast<std::size_t>(uint_field_or(j, "trials", 1000));
  cfg.master_seed = uint_field_or(j, "master_seed", kDefaultMasterSeed);
  if (seed_override) cfg.master_seed = *seed_override;
  cfg.codebooks_per_point =
      static_cast<std::size_t>(uint_field_or(j, "codebooks_per_point", 1));
  cfg.threads = static_cast<std::size_t>(uint_field_or(j, "threads", 0));
  cfg.validate();

  echo = json{{"system", sys_echo},
              {"blocklengths", cfg.blocklengths},
              {"num_semantics", cfg.num_semantics},
              {"msgs_per_semantic", cfg.msgs_per_semantic},
              {"eps", cfg.eps},
              {"trials", cfg.trials},
              {"master_seed", cfg.master_seed},
              {"codebooks_per_point", cfg.codebooks_per_point},
              {"threads", cfg.threads}};
  if (!cfg.schedule.empty()) {
    json sched = json::array();
    for (const auto& s : cfg.schedule) {
      sched.push_back(json{{"num_semantics", s.num_semantics},
                           {"msgs_per_semantic", s.msgs_per_semantic}});
    }
    echo["schedule"] = std::move(sched);
  }
  return cfg;
}

std::vector<std::size_t> parse_permutation(const json& j,
                                           std::size_t num_semantics) {
  const auto perm = uint_array(require(j, "permutation"), "permutation");
  if (perm.size() != num_semantics) {
    throw ValidationError("field 'permutation' must have length num_semantics = " +
                          std::to_string(num_semantics));
  }
  return perm;
}

json system_echo(const SystemSpec& system, const json& channel_echo) {
  return json{{"p_s", pmf_to_json(system.p_s)},
              {"p_x_given_s", conditional_to_json(system.p_x_given_s)},
              {"channel", channel_echo}};
}

json estimate_to_json(const ErrorEstimate& est) {
  return json{{"errors", est.errors},
              {"trials", est.trials},
              {"p_hat", est.p_hat},
              {"ci_low", est.ci_low},
              {"ci_high", est.ci_high}};
}

json quantities_to_json(const InfoQuantities& q) {
  return json{{"i_sx", q.i_sx},
              {"i_sy", q.i_sy},
              {"i_xy", q.i_xy},
              {"h_x_given_s", q.h_x_given_s},
              {"i_xy_given_s", q.i_xy_given_s},
              {"i_sxy", q.i_sxy}};
}

}  // namespace semcom::cli
