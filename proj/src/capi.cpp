#include "wrgoal.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "config.hpp"
#include "experiment.hpp"
#include "outputs.hpp"

struct wrgoal_config {
  wrgoal::ExperimentConfig cfg;
};

struct wrgoal_result {
  wrgoal::ExperimentResult res;
  std::vector<std::string> names;  // stable storage for variant_name
};

namespace {

thread_local std::string g_error;

template <typename F>
int guarded(F&& body) noexcept {
  try {
    body();
    g_error.clear();
    return WRGOAL_OK;
  } catch (const wrgoal::Error& e) {
    g_error = e.what();
    switch (e.kind) {
      case wrgoal::Error::invalid_argument: return WRGOAL_EINVAL;
      case wrgoal::Error::parse: return WRGOAL_EPARSE;
      case wrgoal::Error::io: return WRGOAL_EIO;
      default: return WRGOAL_ERUNTIME;
    }
  } catch (const std::exception& e) {
    g_error = e.what();
    return WRGOAL_ERUNTIME;
  } catch (...) {
    g_error = "unknown failure";
    return WRGOAL_ERUNTIME;
  }
}

int invalid(const char* msg) noexcept {
  g_error = msg;
  return WRGOAL_EINVAL;
}

std::vector<wrgoal::Variant> parse_variant_list(const std::string& csv) {
  std::vector<wrgoal::Variant> out;
  size_t pos = 0;
  while (pos <= csv.size()) {
    const size_t comma = csv.find(',', pos);
    const std::string tok =
        csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty())
      throw wrgoal::Error(wrgoal::Error::parse, "empty entry in variant list '" + csv + "'");
    out.push_back(wrgoal::parse_variant(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw wrgoal::Error(wrgoal::Error::parse, "empty variant list");
  return out;
}

int parse_int(const std::string& v, const char* key) {
  try {
    size_t used = 0;
    const int k = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return k;
  } catch (const std::exception&) {
    throw wrgoal::Error(wrgoal::Error::invalid_argument,
                        std::string(key) + ": expected an integer, got '" + v + "'");
  }
}

double parse_double(const std::string& v, const char* key) {
  try {
    size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw wrgoal::Error(wrgoal::Error::invalid_argument,
                        std::string(key) + ": expected a number, got '" + v + "'");
  }
}

}  // namespace

extern "C" {

const char* wrgoal_last_error(void) { return g_error.c_str(); }

int wrgoal_config_parse(const char* text, wrgoal_config** out) {
  if (!text || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] { *out = new wrgoal_config{wrgoal::parse_config(text)}; });
}

int wrgoal_config_preset(const char* name, wrgoal_config** out) {
  if (!name || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] { *out = new wrgoal_config{wrgoal::preset(name)}; });
}

int wrgoal_config_set(wrgoal_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return invalid("null argument");
  return guarded([&] {
    const std::string k(key), v(value);
    auto& c = cfg->cfg;
    if (k == "name") {
      c.name = v;
    } else if (k == "splitting") {
      c.splitting = wrgoal::parse_split(v);
    } else if (k == "levels") {
      const int n = parse_int(v, key);
      if (n < 0) throw wrgoal::Error(wrgoal::Error::invalid_argument, "levels must be >= 0");
      c.levels = n;
    } else if (k == "uniform_levels") {
      const int n = parse_int(v, key);
      if (n < 0)
        throw wrgoal::Error(wrgoal::Error::invalid_argument, "uniform_levels must be >= 0");
      c.uniform_levels = n;
    } else if (k == "fraction") {
      const double p = parse_double(v, key);
      if (!(p > 0.0) || p > 1.0)
        throw wrgoal::Error(wrgoal::Error::invalid_argument, "fraction must be in (0,1]");
      c.fraction = p;
    } else if (k == "kmax") {
      const int n = parse_int(v, key);
      if (n < 1) throw wrgoal::Error(wrgoal::Error::invalid_argument, "kmax must be >= 1");
      c.k_max = n;
    } else if (k == "n_init") {
      const int n = parse_int(v, key);
      if (n < 2) throw wrgoal::Error(wrgoal::Error::invalid_argument, "n_init must be >= 2");
      c.n_init = n;
    } else if (k == "out_dir") {
      c.out_dir = v;
    } else if (k == "emit_matrices") {
      if (v == "true" || v == "1")
        c.emit_matrices = true;
      else if (v == "false" || v == "0")
        c.emit_matrices = false;
      else
        throw wrgoal::Error(wrgoal::Error::invalid_argument,
                            "emit_matrices: expected true or false");
    } else if (k == "variants") {
      c.variants = parse_variant_list(v);
    } else {
      throw wrgoal::Error(wrgoal::Error::invalid_argument, "unknown config key '" + k + "'");
    }
  });
}

namespace {

int copy_out(const std::string& text, char** out) {
  char* buf = static_cast<char*>(std::malloc(text.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, text.c_str(), text.size() + 1);
  *out = buf;
  return WRGOAL_OK;
}

}  // namespace

int wrgoal_config_get(const wrgoal_config* cfg, const char* key, char** out) {
  if (!cfg || !key || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    const std::string k(key);
    const auto& c = cfg->cfg;
    std::string v;
    if (k == "name")
      v = c.name;
    else if (k == "splitting")
      v = wrgoal::to_string(c.splitting);
    else if (k == "levels")
      v = std::to_string(c.levels);
    else if (k == "uniform_levels")
      v = std::to_string(c.uniform_levels);
    else if (k == "fraction")
      v = wrgoal::fmt17(c.fraction);
    else if (k == "kmax")
      v = std::to_string(c.k_max);
    else if (k == "n_init")
      v = std::to_string(c.n_init);
    else if (k == "out_dir")
      v = c.out_dir;
    else if (k == "emit_matrices")
      v = c.emit_matrices ? "true" : "false";
    else if (k == "variants") {
      for (size_t i = 0; i < c.variants.size(); ++i)
        v += (i ? "," : "") + wrgoal::to_string(c.variants[i]);
    } else {
      throw wrgoal::Error(wrgoal::Error::invalid_argument, "unknown config key '" + k + "'");
    }
    copy_out(v, out);
  });
}

int wrgoal_config_format(const wrgoal_config* cfg, char** out) {
  if (!cfg || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] { copy_out(wrgoal::format_config(cfg->cfg), out); });
}

void wrgoal_config_free(wrgoal_config* cfg) { delete cfg; }

void wrgoal_string_free(char* s) { std::free(s); }

int wrgoal_run(const wrgoal_config* cfg, const char* variants_csv, wrgoal_result** out) {
  if (!cfg || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    wrgoal::ExperimentConfig c = cfg->cfg;
    if (variants_csv) c.variants = parse_variant_list(variants_csv);
    auto* res = new wrgoal_result{wrgoal::run_experiment(c), {}};
    for (const auto& vr : res->res.variants) res->names.push_back(wrgoal::to_string(vr.variant));
    *out = res;
  });
}

int wrgoal_result_variant_count(const wrgoal_result* res) {
  return res ? static_cast<int>(res->res.variants.size()) : 0;
}

const char* wrgoal_result_variant_name(const wrgoal_result* res, int v) {
  if (!res || v < 0 || v >= static_cast<int>(res->names.size())) return nullptr;
  return res->names[v].c_str();
}

int wrgoal_result_level_count(const wrgoal_result* res, int v) {
  if (!res || v < 0 || v >= static_cast<int>(res->res.variants.size())) return 0;
  return static_cast<int>(res->res.variants[v].history.levels.size());
}

int wrgoal_result_level(const wrgoal_result* res, int v, int level, wrgoal_level_info* out) {
  if (!res || !out) return invalid("null argument");
  if (v < 0 || v >= static_cast<int>(res->res.variants.size()))
    return invalid("variant index out of range");
  const auto& vr = res->res.variants[v];
  if (level < 0 || level >= static_cast<int>(vr.history.levels.size()))
    return invalid("level index out of range");
  const auto& rec = vr.history.levels[level];
  out->level = rec.level;
  out->n_cells = rec.N;
  out->k_used = rec.K;
  out->nu = rec.nu;
  out->mu_total = rec.mu_total;
  out->j_value = rec.J;
  out->j_error = vr.errors[level];
  g_error.clear();
  return WRGOAL_OK;
}

double wrgoal_result_reference_qoi(const wrgoal_result* res) {
  return res ? res->res.reference_J : 0.0;
}

int wrgoal_result_write(const wrgoal_result* res, const char* dir) {
  if (!res) return invalid("null argument");
  return guarded(
      [&] { wrgoal::write_outputs(res->res, dir ? dir : res->res.config.out_dir.c_str()); });
}

void wrgoal_result_free(wrgoal_result* res) { delete res; }

}  // extern "C"
