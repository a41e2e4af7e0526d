#include "semcom/io.hpp"

#include <string>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) {
    throw ValidationError(std::string("missing field '") + field + "'");
  }
  return j.at(field);
}

std::vector<double> number_array(const json& j, const char* field) {
  if (!j.is_array()) {
    throw ValidationError(std::string("field '") + field +
                          "' must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw ValidationError(std::string("field '") + field +
                            "' must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

// Shared {"rows": [[...]]} decoding for conditional pmfs and channels.
std::pair<std::size_t, std::vector<double>> matrix_from_json(const json& j,
                                                             const char* what) {
  const json& rows = require(j, "rows");
  if (!rows.is_array() || rows.empty()) {
    throw ValidationError(std::string(what) + ": 'rows' must be a non-empty array");
  }
  std::size_t out_size = 0;
  std::vector<double> probs;
  for (const auto& row : rows) {
    auto values = number_array(row, "rows");
    if (out_size == 0) {
      out_size = values.size();
      if (out_size == 0) {
        throw ValidationError(std::string(what) + ": empty row in 'rows'");
      }
      probs.reserve(rows.size() * out_size);
    } else if (values.size() != out_size) {
      throw ValidationError(std::string(what) + ": ragged 'rows' (row length " +
                            std::to_string(values.size()) + " != " +
                            std::to_string(out_size) + ")");
    }
    probs.insert(probs.end(), values.begin(), values.end());
  }
  return {out_size, std::move(probs)};
}

json matrix_to_json(std::size_t rows, std::size_t cols,
                    const std::vector<double>& probs) {
  json out = json::array();
  for (std::size_t r = 0; r < rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < cols; ++c) row.push_back(probs[r * cols + c]);
    out.push_back(std::move(row));
  }
  return out;
}

std::uint64_t uint_field(const json& j, const char* field) {
  const json& v = require(j, field);
  if (!v.is_number_unsigned()) {
    throw ValidationError(std::string("field '") + field +
                          "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

Seq seq_from_json(const json& j, std::size_t alphabet_size, const char* what) {
  if (!j.is_array()) {
    throw ValidationError(std::string(what) + ": expected an array of letters");
  }
  Seq seq;
  seq.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= alphabet_size) {
      throw ValidationError(std::string(what) +
                            ": letter outside alphabet of size " +
                            std::to_string(alphabet_size));
    }
    seq.push_back(static_cast<Letter>(v.get<std::uint64_t>()));
  }
  return seq;
}

}  // namespace

json pmf_to_json(const Pmf& p) { return json{{"probs", p.probs}}; }

Pmf pmf_from_json(const json& j) {
  Pmf p{number_array(require(j, "probs"), "probs")};
  p.validate("probs");
  return p;
}

json conditional_to_json(const ConditionalPmf& c) {
  return json{{"rows", matrix_to_json(c.given_size, c.out_size, c.probs)}};
}

ConditionalPmf conditional_from_json(const json& j) {
  auto [out_size, probs] = matrix_from_json(j, "conditional pmf");
  ConditionalPmf c;
  c.out_size = out_size;
  c.given_size = probs.size() / out_size;
  c.probs = std::move(probs);
  c.validate();
  return c;
}

json dmc_to_json(const Dmc& ch) {
  return json{{"rows", matrix_to_json(ch.in_size, ch.out_size, ch.probs)}};
}

Dmc dmc_from_json(const json& j) {
  auto [out_size, probs] = matrix_from_json(j, "channel");
  Dmc ch;
  ch.out_size = out_size;
  ch.in_size = probs.size() / out_size;
  ch.probs = std::move(probs);
  ch.validate();
  return ch;
}

json partition_to_json(const ContextPartition& q) {
  return json{{"block_of", q.block_of}};
}

ContextPartition partition_from_json(const json& j) {
  const json& arr = require(j, "block_of");
  if (!arr.is_array() || arr.empty()) {
    throw ValidationError("partition: 'block_of' must be a non-empty array");
  }
  std::vector<std::size_t> block_of;
  block_of.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number_unsigned()) {
      throw ValidationError("partition: 'block_of' entries must be non-negative integers");
    }
    block_of.push_back(v.get<std::size_t>());
  }
  return ContextPartition::from_block_of(std::move(block_of));
}

json codebook_to_json(const Codebook& cb) {
  json gen{{"p_s", pmf_to_json(cb.gen.p_s)},
           {"p_x_given_s", conditional_to_json(cb.gen.p_x_given_s)},
           {"n", cb.gen.n},
           {"num_semantics", cb.gen.num_semantics},
           {"msgs_per_semantic", cb.gen.msgs_per_semantic},
           {"seed", cb.gen.seed}};
  json s_words = json::array();
  for (const auto& word : cb.s_words) s_words.push_back(word);
  json x_words = json::array();
  for (const auto& cloud : cb.x_words) {
    json sats = json::array();
    for (const auto& word : cloud) sats.push_back(word);
    x_words.push_back(std::move(sats));
  }
  return json{{"gen", std::move(gen)},
              {"s_words", std::move(s_words)},
              {"x_words", std::move(x_words)}};
}

Codebook codebook_from_json(const json& j) {
  const json& gen = require(j, "gen");
  Codebook cb;
  cb.gen.p_s = pmf_from_json(require(gen, "p_s"));
  cb.gen.p_x_given_s = conditional_from_json(require(gen, "p_x_given_s"));
  cb.gen.n = static_cast<std::size_t>(uint_field(gen, "n"));
  cb.gen.num_semantics = static_cast<std::size_t>(uint_field(gen, "num_semantics"));
  cb.gen.msgs_per_semantic =
      static_cast<std::size_t>(uint_field(gen, "msgs_per_semantic"));
  cb.gen.seed = uint_field(gen, "seed");
  cb.gen.validate();

  const json& s_words = require(j, "s_words");
  const json& x_words = require(j, "x_words");
  if (!s_words.is_array() || s_words.size() != cb.gen.num_semantics ||
      !x_words.is_array() || x_words.size() != cb.gen.num_semantics) {
    throw ValidationError("codebook: word matrices do not match num_semantics");
  }
  for (const auto& word : s_words) {
    Seq seq = seq_from_json(word, cb.gen.p_s.size(), "codebook s_word");
    if (seq.size() != cb.gen.n) {
      throw ValidationError("codebook: s_word length != n");
    }
    cb.s_words.push_back(std::move(seq));
  }
  for (const auto& cloud : x_words) {
    if (!cloud.is_array() || cloud.size() != cb.gen.msgs_per_semantic) {
      throw ValidationError("codebook: satellite count != msgs_per_semantic");
    }
    auto& sats = cb.x_words.emplace_back();
    for (const auto& word : cloud) {
      Seq seq =
          seq_from_json(word, cb.gen.p_x_given_s.out_size, "codebook x_word");
      if (seq.size() != cb.gen.n) {
        throw ValidationError("codebook: x_word length != n");
      }
      sats.push_back(std::move(seq));
    }
  }
  return cb;
}

}  // namespace semcom
