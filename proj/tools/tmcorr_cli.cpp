// Command-line surface for the exact-correlation library.
//
// Subcommands: pair, npoint, weighted, pd, means, exponent, matrices,
// regseq, oracle, cache.  Output is CSV (default) or JSON on stdout; the
// exact `num/den` field is authoritative and the decimal column is a
// rendering.  Exit codes: 0 ok, 2 argument error, 3 resource-budget
// violation, 1 internal failure.
//
// Environment: TMCORR_PREFIX_CAP bounds generated sequence prefixes;
// TMCORR_MEMO_PATH names a cache file that is loaded at startup and saved
// back on successful exit.

#include "tmcorr/tmcorr.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace tmcorr;

struct OutputRecord {
  std::string query;
  std::string args;
  std::optional<Rat> exact;   // absent for inherently non-rational results
  std::string decimal;
};

class RecordWriter {
 public:
  RecordWriter(bool as_json, int digits) : json_(as_json), digits_(digits) {}

  void add(const std::string& query, const std::string& args,
           const std::optional<Rat>& exact, std::string decimal = "") {
    if (exact && decimal.empty()) decimal = rat_to_decimal(*exact, digits_);
    records_.push_back({query, args, exact, std::move(decimal)});
  }

  int digits() const { return digits_; }

  void flush() {
    if (json_) {
      json out = json::array();
      for (const auto& r : records_) {
        json o;
        o["query"] = r.query;
        o["args"] = r.args;
        if (r.exact)
          o["exact"] = rat_to_string(*r.exact);
        else
          o["exact"] = nullptr;
        o["decimal"] = r.decimal;
        out.push_back(std::move(o));
      }
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "query,args,exact,decimal\n";
      for (const auto& r : records_)
        std::cout << r.query << "," << csv_quote(r.args) << ","
                  << (r.exact ? rat_to_string(*r.exact) : "") << "," << r.decimal
                  << "\n";
    }
  }

 private:
  static std::string csv_quote(const std::string& s) {
    if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
    return out;
  }

  bool json_;
  int digits_;
  std::vector<OutputRecord> records_;
};

std::vector<std::int64_t> parse_lag_list(const std::string& csv) {
  std::vector<std::int64_t> out;
  if (csv.empty()) return out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ArgsError("cannot parse lag '" + tok + "'");
    }
  }
  return out;
}

std::vector<std::string> split_params(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ArgsError(std::string("cannot parse ") + what + " '" + s + "'");
  }
}

std::string join_lags(const std::vector<std::int64_t>& lags) {
  std::string out;
  for (std::size_t i = 0; i < lags.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(lags[i]);
  }
  return out;
}

std::string real_to_string(const Real& x, int digits) {
  return x.str(digits, std::ios_base::fmtflags(0));
}

std::string double_to_string(double x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

void emit_matrix(RecordWriter& w, const std::string& args, const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      w.add("matrices", args + ";row=" + std::to_string(i) + ";col=" + std::to_string(j),
            m(i, j));
}

// Kind handlers for the `means` subcommand.  Each emits one record per
// requested window length so the output forms a (N, value) series.
void run_means(RecordWriter& w, const std::string& kind,
               const std::vector<std::string>& params, std::uint64_t cell_budget) {
  if (kind == "eta-power") {
    if (params.size() < 2) throw ArgsError("eta-power needs params k,N[,N...]");
    const unsigned k = static_cast<unsigned>(parse_u64(params[0], "power"));
    for (std::size_t i = 1; i < params.size(); ++i) {
      const std::uint64_t n = parse_u64(params[i], "window");
      w.add("means", "kind=eta-power;k=" + std::to_string(k) + ";N=" + std::to_string(n),
            power_mean_eta(k, n));
    }
  } else if (kind == "mu-power") {
    if (params.size() < 3) throw ArgsError("mu-power needs params sign,k,N[,N...]");
    MuSign sign;
    if (params[0] == "+" || params[0] == "plus")
      sign = MuSign::plus;
    else if (params[0] == "-" || params[0] == "minus")
      sign = MuSign::minus;
    else
      throw ArgsError("mu-power sign must be plus|minus");
    const unsigned k = static_cast<unsigned>(parse_u64(params[1], "power"));
    for (std::size_t i = 2; i < params.size(); ++i) {
      const std::uint64_t n = parse_u64(params[i], "window");
      w.add("means",
            "kind=mu-power;sign=" + params[0] + ";k=" + std::to_string(k) +
                ";N=" + std::to_string(n),
            power_mean_mu(sign, k, n));
    }
  } else if (kind == "abs") {
    if (params.size() < 3) throw ArgsError("abs needs params beta,alpha,N[,N...]");
    const Rat beta = parse_rational(params[0]);
    const Rat alpha = parse_rational(params[1]);
    for (std::size_t i = 2; i < params.size(); ++i) {
      const std::uint64_t n = parse_u64(params[i], "window");
      const Real v = abs_power_mean_eta(beta, n, alpha);
      w.add("means",
            "kind=abs;beta=" + params[0] + ";alpha=" + params[1] +
                ";N=" + std::to_string(n),
            std::nullopt, real_to_string(v, w.digits()));
    }
  } else if (kind == "wiener") {
    if (params.empty()) throw ArgsError("wiener needs params N[,N...]");
    for (const auto& p : params) {
      const std::uint64_t n = parse_u64(p, "window");
      w.add("means", "kind=wiener;N=" + std::to_string(n), power_mean_eta(2, n));
    }
  } else if (kind == "hypercube") {
    if (params.size() < 2) throw ArgsError("hypercube needs params n,N[,N...]");
    const unsigned order = static_cast<unsigned>(parse_u64(params[0], "order"));
    for (std::size_t i = 1; i < params.size(); ++i) {
      const std::uint64_t n = parse_u64(params[i], "side");
      w.add("means",
            "kind=hypercube;n=" + std::to_string(order) + ";N=" + std::to_string(n),
            hypercube_mean(order, n, global_memo(), cell_budget));
    }
  } else {
    throw ArgsError("unknown means kind '" + kind + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact correlations of the binary sign hierarchy"};
  app.require_subcommand(1);

  std::string format = "csv";
  int digits = 12;
  app.add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--digits", digits, "Significant digits for decimal renderings")
      ->check(CLI::Range(1, 40));

  // pair
  auto* pair_cmd = app.add_subcommand("pair", "Exact pair correlation at a lag");
  std::string pair_m;
  pair_cmd->add_option("m", pair_m, "lag (any integer)")->required();

  // npoint
  auto* npoint_cmd = app.add_subcommand("npoint", "Exact higher-order correlation");
  std::string npoint_lags;
  unsigned npoint_cap = kDefaultOrderCap;
  npoint_cmd->add_option("--lags", npoint_lags, "comma-separated lag list")->required();
  npoint_cmd->add_option("--order-cap", npoint_cap, "maximum correlation order");

  // weighted
  auto* weighted_cmd = app.add_subcommand("weighted", "Correlation under a weight pair");
  std::string w_fminus, w_fplus, w_lags;
  weighted_cmd->add_option("--f-minus", w_fminus, "weight on letter -1")->required();
  weighted_cmd->add_option("--f-plus", w_fplus, "weight on letter +1")->required();
  weighted_cmd->add_option("--lags", w_lags, "comma-separated lag list (may be empty)");

  // pd
  auto* pd_cmd = app.add_subcommand("pd", "Exact period-doubling autocorrelation");
  std::string pd_m;
  pd_cmd->add_option("m", pd_m, "lag (non-negative)")->required();

  // means
  auto* means_cmd = app.add_subcommand("means", "Exact and asymptotic means");
  std::string means_kind, means_params;
  means_cmd
      ->add_option("--kind", means_kind,
                   "eta-power | mu-power | abs | wiener | hypercube")
      ->required();
  means_cmd->add_option("--params", means_params, "kind-specific comma list")->required();
  std::uint64_t means_cell_budget = std::uint64_t(1) << 24;
  means_cmd->add_option("--cell-budget", means_cell_budget,
                        "largest N^(n-1) a hypercube mean may enumerate");

  // exponent
  auto* exp_cmd = app.add_subcommand("exponent", "Digit-depth coefficient mass");
  unsigned exp_j = 0;
  exp_cmd->add_option("--j", exp_j, "digit depth")->required();
  unsigned exp_depth_cap = 24;
  exp_cmd->add_option("--depth-cap", exp_depth_cap, "largest admissible depth (<= 24)");

  // matrices
  auto* mat_cmd = app.add_subcommand("matrices", "Joint-digit matrices");
  unsigned mat_n = 0;
  std::string mat_bits;
  bool mat_sum = false;
  mat_cmd->add_option("--n", mat_n, "correlation order (>= 2)")->required();
  auto* bits_opt = mat_cmd->add_option("--bits", mat_bits, "comma bit list, e.g. 0,0,1");
  auto* sum_opt = mat_cmd->add_flag("--sum", mat_sum, "emit the summed matrix");
  bits_opt->excludes(sum_opt);

  // regseq
  auto* regseq_cmd = app.add_subcommand("regseq", "Regular-sequence value");
  unsigned regseq_n = 0;
  std::uint64_t regseq_m = 0;
  regseq_cmd->add_option("--n", regseq_n, "order (>= 2)")->required();
  regseq_cmd->add_option("--m", regseq_m, "index (>= 0)")->required();

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force prefix estimate");
  std::string o_lags, o_fminus = "-1", o_fplus = "1";
  std::uint64_t o_n = 0;
  std::optional<std::uint64_t> o_pd;
  oracle_cmd->add_option("--lags", o_lags, "comma-separated non-negative lags");
  oracle_cmd->add_option("--N", o_n, "number of Birkhoff terms")->required();
  oracle_cmd->add_option("--f-minus", o_fminus, "weight on letter -1");
  oracle_cmd->add_option("--f-plus", o_fplus, "weight on letter +1");
  oracle_cmd->add_option("--pd", o_pd, "period-doubling autocorrelation lag");

  // cache
  auto* cache_cmd = app.add_subcommand("cache", "Persistent memo cache maintenance");
  std::string cache_action, cache_path;
  cache_cmd->add_option("action", cache_action, "load | save | clear")
      ->required()
      ->check(CLI::IsMember({"load", "save", "clear"}));
  cache_cmd->add_option("path", cache_path, "cache file path")->required();

  // let --format/--digits appear after the subcommand as well
  for (CLI::App* sc : app.get_subcommands(std::function<bool(CLI::App*)>{}))
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  RecordWriter writer(format == "json", digits);

  const char* memo_env = std::getenv("TMCORR_MEMO_PATH");
  if (memo_env != nullptr && *memo_env != '\0' &&
      std::filesystem::exists(memo_env)) {
    try {
      global_memo().load(memo_env);
    } catch (const std::exception& e) {
      std::cerr << "warning: could not load memo cache: " << e.what() << "\n";
    }
  }

  try {
    if (*pair_cmd) {
      std::int64_t m;
      try {
        m = std::stoll(pair_m);
      } catch (const std::exception&) {
        throw ArgsError("cannot parse lag '" + pair_m + "'");
      }
      writer.add("pair", "m=" + std::to_string(m), eta_pair(m));
    } else if (*npoint_cmd) {
      const auto lags = parse_lag_list(npoint_lags);
      const Rat v = eta_n(canonicalize(lags, npoint_cap));
      writer.add("npoint", "lags=" + join_lags(lags), v);
    } else if (*weighted_cmd) {
      WeightPair f{parse_rational(w_fminus), parse_rational(w_fplus)};
      const auto lags = parse_lag_list(w_lags);
      if (lags.size() + 1 > 10)
        throw BudgetError("weighted order capped at 10 at the CLI");
      const Rat v = eta_f_general(f, lags);
      writer.add("weighted",
                 "f-minus=" + w_fminus + ";f-plus=" + w_fplus +
                     ";lags=" + join_lags(lags),
                 v);
    } else if (*pd_cmd) {
      std::int64_t m;
      try {
        m = std::stoll(pd_m);
      } catch (const std::exception&) {
        throw ArgsError("cannot parse lag '" + pd_m + "'");
      }
      if (m < 0) throw ArgsError("period-doubling lag must be non-negative");
      writer.add("pd", "m=" + std::to_string(m), eta_pd(static_cast<std::uint64_t>(m)));
    } else if (*means_cmd) {
      run_means(writer, means_kind, split_params(means_params), means_cell_budget);
    } else if (*exp_cmd) {
      const ExponentReport rep = exponent_bound(exp_j, exp_depth_cap);
      // The decimal column reports the derived exponent log2(c)/j.
      writer.add("exponent", "j=" + std::to_string(rep.j), rep.c_j,
                 double_to_string(rep.alpha_j, digits));
    } else if (*mat_cmd) {
      if (mat_sum) {
        emit_matrix(writer, "n=" + std::to_string(mat_n) + ";sum", b_sum(mat_n));
      } else if (!mat_bits.empty()) {
        const auto bits_list = parse_lag_list(mat_bits);
        if (bits_list.size() + 1 != mat_n)
          throw ArgsError("expected n-1 bits");
        unsigned bits = 0;
        for (std::size_t i = 0; i < bits_list.size(); ++i) {
          if (bits_list[i] != 0 && bits_list[i] != 1)
            throw ArgsError("bits must be 0 or 1");
          bits |= static_cast<unsigned>(bits_list[i]) << (mat_n - 2 - i);
        }
        emit_matrix(writer, "n=" + std::to_string(mat_n) + ";bits=" + mat_bits,
                    b_matrix_kronecker(mat_n, bits));
      } else {
        throw ArgsError("matrices requires --bits or --sum");
      }
    } else if (*regseq_cmd) {
      writer.add("regseq", "n=" + std::to_string(regseq_n) + ";m=" + std::to_string(regseq_m),
                 regseq_eval(regseq_n, regseq_m));
    } else if (*oracle_cmd) {
      if (o_pd) {
        const Estimate est = pd_autocorr_estimate(*o_pd, o_n);
        writer.add("oracle",
                   "pd=" + std::to_string(*o_pd) + ";N=" + std::to_string(o_n),
                   est.exact, real_to_string(est.value, digits));
      } else {
        const auto raw = parse_lag_list(o_lags);
        std::vector<std::uint64_t> lags;
        for (std::int64_t v : raw) {
          if (v < 0) throw ArgsError("oracle lags must be non-negative");
          lags.push_back(static_cast<std::uint64_t>(v));
        }
        WeightPair f{parse_rational(o_fminus), parse_rational(o_fplus)};
        const Estimate est = birkhoff_estimate(f, lags, o_n);
        writer.add("oracle",
                   "lags=" + join_lags(raw) + ";N=" + std::to_string(o_n) +
                       ";f-minus=" + o_fminus + ";f-plus=" + o_fplus,
                   est.exact, real_to_string(est.value, digits));
      }
    } else if (*cache_cmd) {
      if (cache_action == "load") {
        const std::size_t n = global_memo().load(cache_path);
        writer.add("cache", "action=load;path=" + cache_path + ";records=" +
                                std::to_string(n),
                   Rat(static_cast<std::int64_t>(n)));
      } else if (cache_action == "save") {
        global_memo().save(cache_path);
        writer.add("cache",
                   "action=save;path=" + cache_path + ";records=" +
                       std::to_string(global_memo().size()),
                   Rat(static_cast<std::int64_t>(global_memo().size())));
      } else {
        global_memo().clear();
        std::error_code ec;
        std::filesystem::remove(cache_path, ec);
        writer.add("cache", "action=clear;path=" + cache_path, Rat(0));
      }
    }
  } catch (const ArgsError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }

  writer.flush();

  if (memo_env != nullptr && *memo_env != '\0') {
    try {
      global_memo().save(memo_env);
    } catch (const std::exception& e) {
      std::cerr << "warning: could not save memo cache: " << e.what() << "\n";
    }
  }
  return 0;
}
