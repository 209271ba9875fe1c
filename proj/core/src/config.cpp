#include "dustsqp/config.hpp"

#include <fstream>
#include <functional>
#include <map>

namespace dustsqp {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return "";
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw ConfigError("'" + key + "' expects a number, got '" + value + "'");
  }
  return out;
}

long to_long(const std::string& key, const std::string& value) {
  const double d = to_double(key, value);
  const long out = static_cast<long>(d);
  if (static_cast<double>(out) != d) {
    throw ConfigError("'" + key + "' expects an integer, got '" + value + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") {
    return true;
  }
  if (value == "false" || value == "0" || value == "no") {
    return false;
  }
  throw ConfigError("'" + key + "' expects true or false, got '" + value +
                    "'");
}

using Setter = std::function<void(SolverConfig&, const std::string&,
                                  const std::string&)>;

Setter real(double SolverConfig::*field) {
  return [field](SolverConfig& c, const std::string& k, const std::string& v) {
    c.*field = to_double(k, v);
  };
}

Setter integer(int SolverConfig::*field) {
  return [field](SolverConfig& c, const std::string& k, const std::string& v) {
    c.*field = static_cast<int>(to_long(k, v));
  };
}

Setter flag(bool SolverConfig::*field) {
  return [field](SolverConfig& c, const std::string& k, const std::string& v) {
    c.*field = to_bool(k, v);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"gamma_ls", real(&SolverConfig::gamma_ls)},
      {"theta_rho", real(&SolverConfig::theta_rho)},
      {"theta_omega", real(&SolverConfig::theta_omega)},
      {"theta_alpha", real(&SolverConfig::theta_alpha)},
      {"beta_v", real(&SolverConfig::beta_v)},
      {"beta_phi", real(&SolverConfig::beta_phi)},
      {"beta_l", real(&SolverConfig::beta_l)},
      {"rho_init", real(&SolverConfig::rho_init)},
      {"omega_init", real(&SolverConfig::omega_init)},
      {"tol_v", real(&SolverConfig::tol_v)},
      {"tol_opt", real(&SolverConfig::tol_opt)},
      {"tol_fea", real(&SolverConfig::tol_fea)},
      {"max_outer", integer(&SolverConfig::max_outer)},
      {"max_inner_sweeps",
       [](SolverConfig& c, const std::string& k, const std::string& v) {
         c.max_inner_sweeps = to_long(k, v);
       }},
      {"max_null_retries", integer(&SolverConfig::max_null_retries)},
      {"max_backtracks", integer(&SolverConfig::max_backtracks)},
      {"tau_eig", real(&SolverConfig::tau_eig)},
      {"t_cond", real(&SolverConfig::t_cond)},
      {"hessian_backend",
       [](SolverConfig& c, const std::string& k, const std::string& v) {
         if (v == "exact") {
           c.hessian = HessianMode::Exact;
         } else if (v == "lbfgs") {
           c.hessian = HessianMode::Lbfgs;
         } else {
           throw ConfigError("'" + k + "' expects exact or lbfgs, got '" + v +
                             "'");
         }
       }},
      {"lbfgs_memory", integer(&SolverConfig::lbfgs_memory)},
      {"reuse_zeta_for_lambda", flag(&SolverConfig::reuse_zeta_for_lambda)},
      {"shuffle_sweeps", flag(&SolverConfig::shuffle_sweeps)},
      {"seed",
       [](SolverConfig& c, const std::string& k, const std::string& v) {
         const long s = to_long(k, v);
         if (s < 0) {
           throw ConfigError("'seed' must be nonnegative");
         }
         c.seed = static_cast<unsigned long>(s);
       }},
      {"record_inner_trace", flag(&SolverConfig::record_inner_trace)},
  };
  return table;
}

}  // namespace

void apply_setting(SolverConfig& config, const std::string& key,
                   const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) {
    throw ConfigError("unknown key '" + key + "'");
  }
  it->second(config, key, value);
}

void apply_assignment(SolverConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("expected key=value, got '" + assignment + "'");
  }
  apply_setting(config, trim(assignment.substr(0, eq)),
                trim(assignment.substr(eq + 1)));
}

SolverConfig parse_config(std::istream& in, SolverConfig base) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    try {
      apply_assignment(base, line);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  base.validate();
  return base;
}

SolverConfig load_config(const std::string& path, SolverConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  return parse_config(in, base);
}

}  // namespace dustsqp
