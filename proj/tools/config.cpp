#include "config.hpp"

#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace zoma::cli {

namespace {

std::string join(const std::vector<std::string>& lines) {
  std::ostringstream out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out << '\n';
    out << lines[i];
  }
  return out.str();
}

// Walks one JSON object, dispatching known keys and flagging the rest.
class ObjectReader {
 public:
  ObjectReader(const nlohmann::json& obj, std::string path,
               std::vector<std::string>& problems)
      : obj_(obj), path_(std::move(path)), problems_(problems) {}

  bool ok() const {
    if (!obj_.is_object()) {
      problems_.push_back(where() + ": expected an object");
      return false;
    }
    return true;
  }

  void number(const char* key, double& out) {
    known(key, [&](const nlohmann::json& v, const std::string& at) {
      if (!v.is_number()) return fail(at, "expected a number");
      out = v.get<double>();
    });
  }

  void integer(const char* key, int& out) {
    known(key, [&](const nlohmann::json& v, const std::string& at) {
      if (!v.is_number_integer()) return fail(at, "expected an integer");
      const auto value = v.get<long long>();
      if (value < std::numeric_limits<int>::min() ||
          value > std::numeric_limits<int>::max()) {
        return fail(at, "integer out of range");
      }
      out = static_cast<int>(value);
    });
  }

  void seed(const char* key, std::uint64_t& out) {
    known(key, [&](const nlohmann::json& v, const std::string& at) {
      if (v.is_number_unsigned()) {
        out = v.get<std::uint64_t>();
      } else {
        fail(at, "expected a non-negative integer");
      }
    });
  }

  void boolean(const char* key, bool& out) {
    known(key, [&](const nlohmann::json& v, const std::string& at) {
      if (!v.is_boolean()) return fail(at, "expected true or false");
      out = v.get<bool>();
    });
  }

  void integer_list(const char* key, std::vector<int>& out) {
    known(key, [&](const nlohmann::json& v, const std::string& at) {
      if (!v.is_array()) return fail(at, "expected an array of integers");
      std::vector<int> values;
      for (const auto& e : v) {
        if (!e.is_number_integer()) return fail(at, "expected an array of integers");
        values.push_back(e.get<int>());
      }
      out = std::move(values);
    });
  }

  void number_list(const char* key, std::vector<double>& out) {
    known(key, [&](const nlohmann::json& v, const std::string& at) {
      if (!v.is_array()) return fail(at, "expected an array of numbers");
      std::vector<double> values;
      for (const auto& e : v) {
        if (!e.is_number()) return fail(at, "expected an array of numbers");
        values.push_back(e.get<double>());
      }
      out = std::move(values);
    });
  }

  void object(const char* key,
              const std::function<void(ObjectReader&)>& body) {
    known(key, [&](const nlohmann::json& v, const std::string& at) {
      ObjectReader nested(v, at, problems_);
      if (!nested.ok()) return;
      body(nested);
      nested.finish();
    });
  }

  /// Reports every key that no reader claimed.
  void finish() {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) {
        problems_.push_back(child(it.key()) + ": unknown key");
      }
    }
  }

 private:
  std::string where() const { return path_.empty() ? "<root>" : path_; }
  std::string child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void fail(const std::string& at, const std::string& msg) {
    problems_.push_back(at + ": " + msg);
  }

  void known(const char* key,
             const std::function<void(const nlohmann::json&, const std::string&)>& f) {
    seen_[key] = true;
    const auto it = obj_.find(key);
    if (it != obj_.end()) f(*it, child(key));
  }

  const nlohmann::json& obj_;
  std::string path_;
  std::vector<std::string>& problems_;
  std::map<std::string, bool> seen_;
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid config:\n" + join(problems)),
      problems_(std::move(problems)) {}

ExperimentConfig parse_config(const nlohmann::json& doc) {
  ExperimentConfig c;
  std::vector<std::string> problems;
  ObjectReader root(doc, "", problems);
  if (!root.ok()) throw ConfigError(std::move(problems));

  root.seed("seed", c.master_seed);
  root.object("channel", [&](ObjectReader& r) {
    r.integer("paths", c.num_paths);
    r.number("region_side", c.region_side);
    r.boolean("fixed", c.fixed_channel);
  });
  root.object("power", [&](ObjectReader& r) {
    r.number("transmit_power_dbm", c.transmit_power_dbm);
    r.number("transmit_snr_db", c.transmit_snr_db);
  });
  root.object("optimizer", [&](ObjectReader& r) {
    r.number("step_size", c.hyper.step_size);
    r.number("beta1", c.hyper.beta1);
    r.number("beta2", c.hyper.beta2);
    r.number("mu", c.hyper.mu);
    r.number("dim_factor", c.hyper.dim_factor);
    r.number("epsilon", c.hyper.epsilon);
    r.integer("init_candidates", c.hyper.num_init_candidates);
    r.integer("iterations", c.hyper.max_iterations);
    r.boolean("early_stop", c.hyper.early_stop);
    r.integer("early_stop_window", c.hyper.early_stop_window);
    r.number("early_stop_tolerance", c.hyper.early_stop_tolerance);
  });
  root.object("baseline", [&](ObjectReader& r) {
    r.integer("elevation_grid", c.baseline.elevation_count);
    r.integer("azimuth_grid", c.baseline.azimuth_count);
    r.integer("sparsity", c.baseline.sparsity);
    r.number("tolerance", c.baseline.relative_tolerance);
  });
  root.object("sweep", [&](ObjectReader& r) {
    r.integer_list("budgets", c.budgets);
    r.number_list("noise_variances_dbm", c.noise_variances_dbm);
    r.integer("noise_budget", c.noise_budget);
    r.integer("trials", c.trials);
  });
  root.number("grid_resolution", c.grid_resolution);
  root.integer("threads", c.threads);
  root.finish();

  if (problems.empty()) {
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      problems.emplace_back(e.what());
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({path.string() + ": malformed JSON: " + e.what()});
  }
  return parse_config(doc);
}

nlohmann::json default_config_json() {
  const ExperimentConfig c;
  return {
      {"seed", c.master_seed},
      {"channel",
       {{"paths", c.num_paths},
        {"region_side", c.region_side},
        {"fixed", c.fixed_channel}}},
      {"power",
       {{"transmit_power_dbm", c.transmit_power_dbm},
        {"transmit_snr_db", c.transmit_snr_db}}},
      {"optimizer",
       {{"step_size", c.hyper.step_size},
        {"beta1", c.hyper.beta1},
        {"beta2", c.hyper.beta2},
        {"mu", c.hyper.mu},
        {"dim_factor", c.hyper.dim_factor},
        {"epsilon", c.hyper.epsilon},
        {"init_candidates", c.hyper.num_init_candidates},
        {"iterations", c.hyper.max_iterations},
        {"early_stop", c.hyper.early_stop},
        {"early_stop_window", c.hyper.early_stop_window},
        {"early_stop_tolerance", c.hyper.early_stop_tolerance}}},
      {"baseline",
       {{"elevation_grid", c.baseline.elevation_count},
        {"azimuth_grid", c.baseline.azimuth_count},
        {"sparsity", c.baseline.sparsity},
        {"tolerance", c.baseline.relative_tolerance}}},
      {"sweep",
       {{"budgets", c.budgets},
        {"noise_variances_dbm", c.noise_variances_dbm},
        {"noise_budget", c.noise_budget},
        {"trials", c.trials}}},
      {"grid_resolution", c.grid_resolution},
      {"threads", c.threads},
  };
}

}  // namespace zoma::cli
