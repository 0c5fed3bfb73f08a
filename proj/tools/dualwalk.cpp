// dualwalk — exact transition laws, block matrices and samplers for an
// interlacing lattice walk, exposed as small composable subcommands.
//
// Exit codes: 0 success, 1 validation/usage failure, 2 identity-check
// failure (factor-check violations, compare over tolerance).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dualwalk/blocks.hpp"
#include "dualwalk/coefficients.hpp"
#include "dualwalk/random.hpp"
#include "dualwalk/urn.hpp"
#include "dualwalk/walk.hpp"
#include "dualwalk/young.hpp"

namespace {

using dualwalk::Int;
using dualwalk::Rational;
using json = nlohmann::ordered_json;

std::vector<Int> parse_tuple(const std::string& text, const char* what) {
  std::vector<Int> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      size_t used = 0;
      values.push_back(std::stoll(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) {
        ++used;
      }
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception&) {
      throw dualwalk::DomainError(std::string(what) + ": '" + item +
                                  "' is not an integer");
    }
  }
  if (values.empty()) {
    throw dualwalk::DomainError(std::string(what) + ": empty tuple");
  }
  return values;
}

std::string join(const std::vector<Int>& values, char sep) {
  return dualwalk::format_tuple(values, sep);
}

std::string fmt_double(double value) {
  std::ostringstream out;
  out << value;
  return out.str();
}

// Every subcommand streams to stdout unless --out redirects it.
struct Sink {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) {
      return;
    }
    file.open(path);
    if (!file) {
      throw dualwalk::DomainError("cannot open output file " + path);
    }
    stream = &file;
  }
  std::ostream& out() { return *stream; }
};

struct CommonFlags {
  std::string format = "table";
  bool with_float = false;
  std::string out_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "records"}))
        ->capture_default_str();
    cmd->add_flag("--float", with_float,
                  "Add decimal columns next to the exact p/q ones");
    cmd->add_option("--out", out_path, "Write output to a file");
  }
};

std::uint64_t resolve_seed(const CLI::Option* seed_option,
                           std::uint64_t seed_flag) {
  if (seed_option->count() > 0) {
    return seed_flag;
  }
  if (const char* env = std::getenv("DUALWALK_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw dualwalk::DomainError(
          std::string("DUALWALK_SEED is not an unsigned integer: ") + env);
    }
  }
  return 1;
}

int run_coeffs(const CommonFlags& common, const std::string& k_text,
               const std::string& m_text) {
  const dualwalk::KWeight k(parse_tuple(k_text, "--k"));
  const dualwalk::StateSignature m(parse_tuple(m_text, "--m"), k);
  const auto a = dualwalk::a_sq_all(m);
  const auto b = dualwalk::b_sq_all(m);
  Sink sink;
  sink.open(common.out_path);
  if (common.format == "table") {
    auto line = [&](const char* label, const std::vector<Rational>& v,
                    bool as_float) {
      sink.out() << label << ':';
      for (const Rational& x : v) {
        sink.out() << ' '
                   << (as_float ? fmt_double(dualwalk::to_double(x))
                                : dualwalk::to_pq(x));
      }
      sink.out() << '\n';
    };
    line("a_sq", a, false);
    line("b_sq", b, false);
    if (common.with_float) {
      line("a_sq~", a, true);
      line("b_sq~", b, true);
    }
  } else if (common.format == "csv") {
    sink.out() << "i,a_sq,b_sq";
    if (common.with_float) {
      sink.out() << ",a_sq_float,b_sq_float";
    }
    sink.out() << '\n';
    for (size_t i = 0; i < a.size(); ++i) {
      sink.out() << i + 1 << ',' << dualwalk::to_pq(a[i]) << ','
                 << dualwalk::to_pq(b[i]);
      if (common.with_float) {
        sink.out() << ',' << fmt_double(dualwalk::to_double(a[i])) << ','
                   << fmt_double(dualwalk::to_double(b[i]));
      }
      sink.out() << '\n';
    }
  } else {
    for (size_t i = 0; i < a.size(); ++i) {
      json record;
      record["i"] = i + 1;
      record["a_sq"] = dualwalk::to_pq(a[i]);
      record["b_sq"] = dualwalk::to_pq(b[i]);
      if (common.with_float) {
        record["a_sq_float"] = dualwalk::to_double(a[i]);
        record["b_sq_float"] = dualwalk::to_double(b[i]);
      }
      sink.out() << record.dump() << '\n';
    }
  }
  return 0;
}

int run_matrix(const CommonFlags& common, const std::string& k_text,
               const std::string& layout_name, Int w_max) {
  const dualwalk::KWeight k(parse_tuple(k_text, "--k"));
  dualwalk::Layout layout = dualwalk::Layout::M;
  if (layout_name == "M1") {
    layout = dualwalk::Layout::M1;
  } else if (layout_name == "M2") {
    layout = dualwalk::Layout::M2;
  } else if (layout_name != "M") {
    throw dualwalk::DomainError("unknown layout '" + layout_name +
                                "'; expected M, M1 or M2");
  }
  const auto matrix = dualwalk::build_matrix(layout, k, w_max);
  const auto omega = dualwalk::enumerate_omega(k);
  Sink sink;
  sink.open(common.out_path);
  if (common.format == "csv") {
    sink.out() << "w_row,r_row,w_col,r_col,value_p_over_q";
    if (common.with_float) {
      sink.out() << ",value_float";
    }
    sink.out() << '\n';
  }
  auto emit = [&](Int w_row, const dualwalk::OmegaIndex& r_row, Int w_col,
                  const dualwalk::OmegaIndex& r_col, const Rational& value) {
    if (common.format == "table") {
      sink.out() << '(' << w_row << '|' << join(r_row.r, ';') << ") (" << w_col
                 << '|' << join(r_col.r, ';') << ") " << dualwalk::to_pq(value);
      if (common.with_float) {
        sink.out() << ' ' << fmt_double(dualwalk::to_double(value));
      }
      sink.out() << '\n';
    } else if (common.format == "csv") {
      sink.out() << w_row << ',' << join(r_row.r, ';') << ',' << w_col << ','
                 << join(r_col.r, ';') << ',' << dualwalk::to_pq(value);
      if (common.with_float) {
        sink.out() << ',' << fmt_double(dualwalk::to_double(value));
      }
      sink.out() << '\n';
    } else {
      json record;
      record["w_row"] = w_row;
      record["r_row"] = join(r_row.r, ';');
      record["w_col"] = w_col;
      record["r_col"] = join(r_col.r, ';');
      record["value"] = dualwalk::to_pq(value);
      if (common.with_float) {
        record["value_float"] = dualwalk::to_double(value);
      }
      sink.out() << record.dump() << '\n';
    }
  };
  auto emit_block = [&](Int w_row, Int w_col, const dualwalk::Block& block) {
    for (Int row = 0; row < block.rows(); ++row) {
      for (Int col = 0; col < block.cols(); ++col) {
        if (block(row, col) != 0) {
          emit(w_row, omega[static_cast<size_t>(row)], w_col,
               omega[static_cast<size_t>(col)], block(row, col));
        }
      }
    }
  };
  for (Int l = 0; l < matrix.levels(); ++l) {
    const Int w = matrix.w_min + l;
    if (!matrix.sub.empty() && l > 0) {
      emit_block(w, w - 1, matrix.sub[static_cast<size_t>(l)]);
    }
    if (!matrix.diag.empty()) {
      emit_block(w, w, matrix.diag[static_cast<size_t>(l)]);
    }
    if (!matrix.sup.empty() && l + 1 < matrix.levels()) {
      emit_block(w, w + 1, matrix.sup[static_cast<size_t>(l)]);
    }
  }
  return 0;
}

int run_factor_check(const CommonFlags& common, const std::string& k_text,
                     Int w_max) {
  const dualwalk::KWeight k(parse_tuple(k_text, "--k"));
  const auto report = dualwalk::check_factorization(k, w_max);
  Sink sink;
  sink.open(common.out_path);
  if (common.format == "csv") {
    sink.out() << "w,identity,row,col,lhs,rhs\n";
    for (const auto& v : report.violations) {
      sink.out() << v.w << ',' << v.identity << ',' << v.row << ',' << v.col
                 << ',' << dualwalk::to_pq(v.lhs) << ','
                 << dualwalk::to_pq(v.rhs) << '\n';
    }
  } else if (common.format == "records") {
    for (const auto& v : report.violations) {
      json record;
      record["w"] = v.w;
      record["identity"] = std::string(1, v.identity);
      record["row"] = v.row;
      record["col"] = v.col;
      record["lhs"] = dualwalk::to_pq(v.lhs);
      record["rhs"] = dualwalk::to_pq(v.rhs);
      sink.out() << record.dump() << '\n';
    }
  } else {
    for (const auto& v : report.violations) {
      sink.out() << "MISMATCH w=" << v.w << " identity=" << v.identity
                 << " row=" << v.row << " col=" << v.col
                 << " lhs=" << dualwalk::to_pq(v.lhs)
                 << " rhs=" << dualwalk::to_pq(v.rhs) << '\n';
    }
  }
  if (report.ok()) {
    sink.out() << "OK (" << report.identities_checked << " identities)\n";
    return 0;
  }
  sink.out() << "FAILED (" << report.violations.size() << " mismatches in "
             << report.identities_checked << " identities)\n";
  return 2;
}

int run_urn_enum(const CommonFlags& common, const std::string& k_text,
                 const std::string& m_text) {
  const dualwalk::KWeight k(parse_tuple(k_text, "--k"));
  const dualwalk::StateSignature m(parse_tuple(m_text, "--m"), k);
  const int n = m.n();
  Sink sink;
  sink.open(common.out_path);
  if (common.format == "csv") {
    sink.out() << "word,class,probability_p_over_q";
    if (common.with_float) {
      sink.out() << ",probability_float";
    }
    sink.out() << '\n';
  }
  for (const dualwalk::Word& word : dualwalk::enumerate_words(n)) {
    const int klass = dualwalk::classify(word, n);
    const Rational p = dualwalk::word_probability(word, m);
    if (common.format == "table") {
      sink.out() << dualwalk::to_string(word) << ' ' << klass << ' '
                 << dualwalk::to_pq(p);
      if (common.with_float) {
        sink.out() << ' ' << fmt_double(dualwalk::to_double(p));
      }
      sink.out() << '\n';
    } else if (common.format == "csv") {
      sink.out() << '"' << dualwalk::to_string(word) << "\"," << klass << ','
                 << dualwalk::to_pq(p);
      if (common.with_float) {
        sink.out() << ',' << fmt_double(dualwalk::to_double(p));
      }
      sink.out() << '\n';
    } else {
      json record;
      record["word"] = dualwalk::to_string(word);
      record["class"] = klass;
      record["probability"] = dualwalk::to_pq(p);
      if (common.with_float) {
        record["probability_float"] = dualwalk::to_double(p);
      }
      sink.out() << record.dump() << '\n';
    }
  }
  return 0;
}

int run_urn_card(const CommonFlags& common, int n) {
  const auto cardinalities = dualwalk::class_cardinalities_recursive(n);
  Sink sink;
  sink.open(common.out_path);
  if (common.format == "table") {
    for (size_t j = 0; j < cardinalities.size(); ++j) {
      sink.out() << (j > 0 ? " " : "") << cardinalities[j];
    }
    sink.out() << '\n';
  } else if (common.format == "csv") {
    sink.out() << "class,cardinality\n";
    for (size_t j = 0; j < cardinalities.size(); ++j) {
      sink.out() << j + 1 << ',' << cardinalities[j] << '\n';
    }
  } else {
    for (size_t j = 0; j < cardinalities.size(); ++j) {
      json record;
      record["class"] = j + 1;
      record["cardinality"] = cardinalities[j].str();
      sink.out() << record.dump() << '\n';
    }
  }
  return 0;
}

int run_young_render(const CommonFlags& common, const std::string& k_text,
                     const std::string& m_text, const std::string& glyph) {
  const dualwalk::KWeight k(parse_tuple(k_text, "--k"));
  const dualwalk::StateSignature m(parse_tuple(m_text, "--m"), k);
  const dualwalk::YoungState state(m);
  Sink sink;
  sink.open(common.out_path);
  sink.out() << dualwalk::render(state, glyph);
  return 0;
}

int run_simulate(const CommonFlags& common, const std::string& k_text,
                 const std::string& m_text, Int t, Int walkers,
                 std::uint64_t seed, const std::string& mechanism_name,
                 int workers, Int log_walkers,
                 const std::string& trajectory_path) {
  const dualwalk::KWeight k(parse_tuple(k_text, "--k"));
  const dualwalk::StateSignature m(parse_tuple(m_text, "--m"), k);
  const dualwalk::Mechanism mechanism =
      dualwalk::parse_mechanism(mechanism_name);
  const auto result =
      dualwalk::simulate(m, t, walkers, seed, mechanism, workers, log_walkers);
  if (!trajectory_path.empty()) {
    std::ofstream log(trajectory_path);
    if (!log) {
      throw dualwalk::DomainError("cannot open trajectory file " +
                                  trajectory_path);
    }
    log << result.log.csv();
  }
  Sink sink;
  sink.open(common.out_path);
  if (common.format == "csv") {
    sink.out() << result.empirical_csv();
  } else if (common.format == "table") {
    for (const auto& [state, count] : result.counts) {
      sink.out() << '(' << join(state, ',') << ") " << count << ' '
                 << fmt_double(static_cast<double>(count) /
                               static_cast<double>(walkers))
                 << '\n';
    }
  } else {
    for (const auto& [state, count] : result.counts) {
      json record;
      record["state"] = join(state, ',');
      record["count"] = count;
      record["frequency"] =
          static_cast<double>(count) / static_cast<double>(walkers);
      sink.out() << record.dump() << '\n';
    }
  }
  return 0;
}

int run_evolve(const CommonFlags& common, const std::string& k_text,
               const std::string& m_text, Int t, Int w_max) {
  const dualwalk::KWeight k(parse_tuple(k_text, "--k"));
  const dualwalk::StateSignature m(parse_tuple(m_text, "--m"), k);
  const dualwalk::PCoordinate start = dualwalk::wr_from_state(m);
  std::map<dualwalk::PCoordinate, Rational> initial{{start, Rational(1)}};
  const auto result = dualwalk::evolve(initial, t, k, w_max);
  Sink sink;
  sink.open(common.out_path);
  if (common.format == "csv") {
    sink.out() << "w,r,m,weight_p_over_q";
    if (common.with_float) {
      sink.out() << ",weight_float";
    }
    sink.out() << '\n';
  }
  for (const auto& [coord, weight] : result.distribution) {
    const auto state = dualwalk::state_from_wr(coord, k);
    if (common.format == "table") {
      sink.out() << '(' << coord.w << '|' << join(coord.r.r, ';') << ") ("
                 << join(state.m(), ',') << ") " << dualwalk::to_pq(weight);
      if (common.with_float) {
        sink.out() << ' ' << fmt_double(dualwalk::to_double(weight));
      }
      sink.out() << '\n';
    } else if (common.format == "csv") {
      sink.out() << coord.w << ',' << join(coord.r.r, ';') << ",\""
                 << join(state.m(), ',') << "\"," << dualwalk::to_pq(weight);
      if (common.with_float) {
        sink.out() << ',' << fmt_double(dualwalk::to_double(weight));
      }
      sink.out() << '\n';
    } else {
      json record;
      record["w"] = coord.w;
      record["r"] = join(coord.r.r, ';');
      record["m"] = join(state.m(), ',');
      record["weight"] = dualwalk::to_pq(weight);
      if (common.with_float) {
        record["weight_float"] = dualwalk::to_double(weight);
      }
      sink.out() << record.dump() << '\n';
    }
  }
  if (common.format == "table") {
    sink.out() << "mass: " << dualwalk::to_pq(result.mass) << '\n';
    sink.out() << "deficit: " << dualwalk::to_pq(result.deficit) << '\n';
    if (result.truncation_warning) {
      sink.out() << "warning: support can reach the w_max cut-off within t "
                    "steps; the deficit above is the leaked mass\n";
    }
  } else if (common.format == "records") {
    json record;
    record["mass"] = dualwalk::to_pq(result.mass);
    record["deficit"] = dualwalk::to_pq(result.deficit);
    record["truncation_warning"] = result.truncation_warning;
    sink.out() << record.dump() << '\n';
  }
  return 0;
}

int run_compare(const CommonFlags& common, const std::string& k_text,
                const std::string& m_text, Int t, Int w_max, Int walkers,
                std::uint64_t seed, const std::string& mechanism_name,
                int workers, double tolerance) {
  const dualwalk::KWeight k(parse_tuple(k_text, "--k"));
  const dualwalk::StateSignature m(parse_tuple(m_text, "--m"), k);
  const dualwalk::Mechanism mechanism =
      dualwalk::parse_mechanism(mechanism_name);
  const dualwalk::PCoordinate start = dualwalk::wr_from_state(m);
  std::map<dualwalk::PCoordinate, Rational> initial{{start, Rational(1)}};
  const auto exact_result = dualwalk::evolve(initial, t, k, w_max);
  dualwalk::Distribution exact;
  for (const auto& [coord, weight] : exact_result.distribution) {
    exact.add(dualwalk::state_from_wr(coord, k).m(), weight);
  }
  const auto sim =
      dualwalk::simulate(m, t, walkers, seed, mechanism, workers, 0);
  const double tv = dualwalk::total_variation(sim.counts, walkers, exact);
  const bool ok = tv <= tolerance;
  Sink sink;
  sink.open(common.out_path);
  if (common.format == "csv") {
    sink.out() << "walkers,t,tv_distance,tolerance,exact_mass,verdict\n"
               << walkers << ',' << t << ',' << fmt_double(tv) << ','
               << fmt_double(tolerance) << ','
               << dualwalk::to_pq(exact_result.mass) << ','
               << (ok ? "OK" : "FAIL") << '\n';
  } else if (common.format == "records") {
    json record;
    record["walkers"] = walkers;
    record["t"] = t;
    record["tv_distance"] = tv;
    record["tolerance"] = tolerance;
    record["exact_mass"] = dualwalk::to_pq(exact_result.mass);
    record["verdict"] = ok ? "OK" : "FAIL";
    sink.out() << record.dump() << '\n';
  } else {
    sink.out() << "walkers: " << walkers << '\n';
    sink.out() << "t: " << t << '\n';
    sink.out() << "tv_distance: " << fmt_double(tv) << '\n';
    sink.out() << "tolerance: " << fmt_double(tolerance) << '\n';
    sink.out() << "exact_mass: " << dualwalk::to_pq(exact_result.mass) << '\n';
    sink.out() << "verdict: " << (ok ? "OK" : "FAIL") << '\n';
  }
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact transition laws, block-tridiagonal matrices and combinatorial "
      "samplers for an interlacing lattice walk"};
  app.require_subcommand(1);

  int exit_code = 0;

  // coeffs
  auto* coeffs = app.add_subcommand(
      "coeffs", "Print the a²/b² coefficient rows at a state");
  CommonFlags coeffs_common;
  std::string coeffs_k, coeffs_m;
  coeffs->add_option("--k", coeffs_k, "Weight tuple, e.g. 6,3")->required();
  coeffs->add_option("--m", coeffs_m, "State tuple, e.g. 8,5,1")->required();
  coeffs_common.attach(coeffs);
  coeffs->callback(
      [&] { exit_code = run_coeffs(coeffs_common, coeffs_k, coeffs_m); });

  // matrix
  auto* matrix =
      app.add_subcommand("matrix", "Dump a truncated block matrix (sparse)");
  CommonFlags matrix_common;
  std::string matrix_k, matrix_layout = "M";
  Int matrix_wmax = 8;
  matrix->add_option("--k", matrix_k, "Weight tuple")->required();
  matrix->add_option("--layout", matrix_layout, "M, M1 or M2")
      ->capture_default_str();
  matrix->add_option("--wmax", matrix_wmax, "Top level of the truncation")
      ->capture_default_str();
  matrix_common.attach(matrix);
  matrix->callback([&] {
    exit_code = run_matrix(matrix_common, matrix_k, matrix_layout, matrix_wmax);
  });

  // factor-check
  auto* factor = app.add_subcommand(
      "factor-check", "Verify A=YR, B=XR'+YS, C=XS' exactly on a window");
  CommonFlags factor_common;
  std::string factor_k;
  Int factor_wmax = 10;
  factor->add_option("--k", factor_k, "Weight tuple")->required();
  factor->add_option("--wmax", factor_wmax, "Levels to check (w < wmax)")
      ->capture_default_str();
  factor_common.attach(factor);
  factor->callback(
      [&] { exit_code = run_factor_check(factor_common, factor_k, factor_wmax); });

  // urn-enum
  auto* urn_enum = app.add_subcommand(
      "urn-enum", "Enumerate the urn sample space with classes and "
                  "probabilities (n <= 4)");
  CommonFlags urn_enum_common;
  std::string urn_enum_k, urn_enum_m;
  urn_enum->add_option("--k", urn_enum_k, "Weight tuple")->required();
  urn_enum->add_option("--m", urn_enum_m, "State tuple")->required();
  urn_enum_common.attach(urn_enum);
  urn_enum->callback(
      [&] { exit_code = run_urn_enum(urn_enum_common, urn_enum_k, urn_enum_m); });

  // urn-card
  auto* urn_card = app.add_subcommand(
      "urn-card", "Class cardinalities |S_{j,n+1}| by the recursion");
  CommonFlags urn_card_common;
  int urn_card_n = 2;
  urn_card->add_option("--n", urn_card_n, "Rank n")->required();
  urn_card_common.attach(urn_card);
  urn_card->callback(
      [&] { exit_code = run_urn_card(urn_card_common, urn_card_n); });

  // young-render
  auto* young = app.add_subcommand("young-render",
                                   "Draw a state as a Young diagram");
  CommonFlags young_common;
  std::string young_k, young_m, young_glyph = "▢";
  young->add_option("--k", young_k, "Weight tuple")->required();
  young->add_option("--m", young_m, "State tuple (m_{n+1} >= 0)")->required();
  young->add_option("--glyph", young_glyph, "Box glyph")
      ->capture_default_str();
  young_common.attach(young);
  young->callback([&] {
    exit_code = run_young_render(young_common, young_k, young_m, young_glyph);
  });

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo walkers of the composed step");
  CommonFlags simulate_common;
  std::string simulate_k, simulate_m, simulate_mechanism = "direct",
                                      simulate_trajectories;
  Int simulate_t = 1, simulate_walkers = 10000, simulate_log_walkers = 1;
  std::uint64_t simulate_seed = 1;
  int simulate_workers = 1;
  simulate->add_option("--k", simulate_k, "Weight tuple")->required();
  simulate->add_option("--m", simulate_m, "Initial state")->required();
  simulate->add_option("--t", simulate_t, "Steps per walker")
      ->capture_default_str();
  simulate->add_option("--walkers", simulate_walkers, "Walker count")
      ->capture_default_str();
  auto* simulate_seed_opt = simulate->add_option(
      "--seed", simulate_seed, "Seed (default: DUALWALK_SEED or 1)");
  simulate->add_option("--mechanism", simulate_mechanism,
                       "direct, urn or young")
      ->capture_default_str();
  simulate->add_option("--workers", simulate_workers, "Worker threads")
      ->capture_default_str();
  simulate->add_option("--log-walkers", simulate_log_walkers,
                       "Trajectories to record")
      ->capture_default_str();
  simulate->add_option("--trajectories", simulate_trajectories,
                       "Write the trajectory CSV to this file");
  simulate_common.attach(simulate);
  simulate->callback([&] {
    exit_code = run_simulate(simulate_common, simulate_k, simulate_m,
                             simulate_t, simulate_walkers,
                             resolve_seed(simulate_seed_opt, simulate_seed),
                             simulate_mechanism, simulate_workers,
                             simulate_log_walkers, simulate_trajectories);
  });

  // evolve
  auto* evolve = app.add_subcommand(
      "evolve", "Exact distribution after t steps on the truncated window");
  CommonFlags evolve_common;
  std::string evolve_k, evolve_m;
  Int evolve_t = 1, evolve_wmax = 40;
  evolve->add_option("--k", evolve_k, "Weight tuple")->required();
  evolve->add_option("--m", evolve_m, "Initial state (must satisfy s_m = s_k)")
      ->required();
  evolve->add_option("--t", evolve_t, "Steps")->capture_default_str();
  evolve->add_option("--wmax", evolve_wmax, "Top level of the truncation")
      ->capture_default_str();
  evolve_common.attach(evolve);
  evolve->callback([&] {
    exit_code =
        run_evolve(evolve_common, evolve_k, evolve_m, evolve_t, evolve_wmax);
  });

  // compare
  auto* compare = app.add_subcommand(
      "compare", "Total-variation distance between simulate and evolve");
  CommonFlags compare_common;
  std::string compare_k, compare_m, compare_mechanism = "direct";
  Int compare_t = 1, compare_wmax = 40, compare_walkers = 10000;
  std::uint64_t compare_seed = 1;
  int compare_workers = 1;
  double compare_tol = 0.02;
  compare->add_option("--k", compare_k, "Weight tuple")->required();
  compare->add_option("--m", compare_m, "Initial state (must satisfy s_m = s_k)")
      ->required();
  compare->add_option("--t", compare_t, "Steps")->capture_default_str();
  compare->add_option("--wmax", compare_wmax, "Top level of the truncation")
      ->capture_default_str();
  compare->add_option("--walkers", compare_walkers, "Walker count")
      ->capture_default_str();
  auto* compare_seed_opt = compare->add_option(
      "--seed", compare_seed, "Seed (default: DUALWALK_SEED or 1)");
  compare->add_option("--mechanism", compare_mechanism, "direct, urn or young")
      ->capture_default_str();
  compare->add_option("--workers", compare_workers, "Worker threads")
      ->capture_default_str();
  compare->add_option("--tol", compare_tol, "TV tolerance")
      ->capture_default_str();
  compare_common.attach(compare);
  compare->callback([&] {
    exit_code = run_compare(compare_common, compare_k, compare_m, compare_t,
                            compare_wmax, compare_walkers,
                            resolve_seed(compare_seed_opt, compare_seed),
                            compare_mechanism, compare_workers, compare_tol);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const dualwalk::ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
