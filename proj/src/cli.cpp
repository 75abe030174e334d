#include "varispeed/cli.hpp"

#include "varispeed/continuous.hpp"
#include "varispeed/cost.hpp"
#include "varispeed/discrete.hpp"
#include "varispeed/fptas.hpp"
#include "varispeed/generators.hpp"
#include "varispeed/io.hpp"
#include "varispeed/oracle.hpp"
#include "varispeed/parallel.hpp"
#include "varispeed/ptas.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace varispeed {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

json to_json(const SolveReport& r) {
  json j;
  j["instance_hash"] = r.instance_hash;
  j["algo"] = r.algo;
  j["eps"] = r.eps;
  if (!r.alpha.empty()) j["alpha"] = r.alpha;
  if (!r.budget.empty()) j["budget"] = r.budget;
  j["machines"] = r.machines;
  j["permutation"] = r.permutation;
  j["cost"] = r.cost;
  if (!r.cost_exact.empty()) j["cost_exact"] = r.cost_exact;
  j["energy_used"] = r.energy_used;
  j["certified_bound"] = r.certified_bound ? json(*r.certified_bound) : json(nullptr);
  j["oracle_cost"] = r.oracle_cost ? json(*r.oracle_cost) : json(nullptr);
  j["ratio"] = r.ratio ? json(*r.ratio) : json(nullptr);
  j["wall_ms"] = r.wall_ms;
  j["seed"] = r.seed;
  if (!r.schedule.is_null()) j["schedule"] = r.schedule;
  return j;
}

std::string report_csv_header() {
  return "instance_hash,algo,eps,alpha,budget,machines,permutation,cost,energy_used,certified_bound,oracle_cost,ratio,"
         "wall_ms,seed";
}

std::string report_csv_row(const SolveReport& r) {
  std::ostringstream o;
  auto opt = [](const std::optional<double>& x) { return x ? format_double(*x) : std::string(); };
  std::string perm;
  for (std::size_t i = 0; i < r.permutation.size(); ++i) perm += (i ? " " : "") + std::to_string(r.permutation[i]);
  o << r.instance_hash << ',' << r.algo << ',' << format_double(r.eps) << ',' << r.alpha << ',' << r.budget << ','
    << r.machines << ',' << perm << ',' << format_double(r.cost) << ',' << format_double(r.energy_used) << ','
    << opt(r.certified_bound) << ',' << opt(r.oracle_cost) << ',' << opt(r.ratio) << ',' << format_double(r.wall_ms)
    << ',' << r.seed;
  return o.str();
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

TimeSchedule continuous_time_schedule(const Instance& inst, const std::vector<int>& order,
                                      const std::vector<double>& execution) {
  TimeSchedule ts;
  ts.order = order;
  ts.completion.assign(inst.size(), Rational(0));
  ts.execution.assign(inst.size(), Rational(0));
  Rational t = 0;
  for (int j : order) {
    ts.execution[j] = from_double(execution[j]);
    t += ts.execution[j];
    ts.completion[j] = t;
  }
  return ts;
}

void set_ratio(SolveReport& r, double oracle) {
  r.oracle_cost = oracle;
  if (oracle > 0)
    r.ratio = r.cost / oracle;
  else
    r.ratio = r.cost <= 0 ? 1.0 : std::numeric_limits<double>::infinity();
}

Rational default_discrete_budget(const Instance& inst, const DiscreteSpeedMenu& menu) {
  Rational lo = menu.min_energy(inst.total_volume());
  Rational hi = inst.total_volume() * menu.energy_per_volume(0);
  return (lo + hi) / 2;
}

struct SolveArgs {
  std::string algo;
  double eps = 0.2;
  std::optional<std::string> budget;
  std::vector<std::string> budgets;
  std::optional<std::string> alpha;
  int machines = 1;
  bool compare = false;
  bool with_schedule = false;
  std::uint64_t seed = 0;
};

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

bool oracle_allowed(const Instance& inst) { return static_cast<int>(inst.size()) <= oracle_max_n(); }

std::vector<SolveReport> solve_problem(const Problem& p, const SolveArgs& a, std::string& timeline) {
  const Instance& inst = p.instance;
  std::vector<SolveReport> out;
  SolveReport base;
  base.instance_hash = problem_hash(p);
  base.algo = a.algo;
  base.eps = a.eps;
  base.machines = a.machines;
  base.seed = a.seed;

  std::optional<Rational> alpha = p.alpha;
  if (a.alpha) alpha = parse_rational(*a.alpha);
  std::optional<Rational> budget = p.budget;
  if (a.budget) budget = parse_rational(*a.budget);
  if (alpha) base.alpha = to_string(*alpha);
  auto need_budget = [&]() -> Rational {
    if (!budget) throw UsageError("this algorithm needs an energy budget (--budget or \"budget\" in the file)");
    return *budget;
  };
  auto need_menu = [&]() -> const DiscreteSpeedMenu& {
    if (!p.menu) throw UsageError("this algorithm needs a discrete speed menu in the instance file");
    return *p.menu;
  };
  auto need_alpha = [&]() -> Rational {
    if (!alpha) throw UsageError("this algorithm needs alpha (--alpha or \"alpha\" in the file)");
    return *alpha;
  };
  PtasOptions po;
  po.eps = a.eps;

  if (a.algo == "ptas" || (a.algo == "exact" && p.speed)) {
    if (!p.speed) throw UsageError("ptas needs a speed profile in the instance file");
    auto t0 = std::chrono::steady_clock::now();
    SolveReport r = base;
    std::vector<int> order;
    Rational cost;
    if (a.algo == "ptas") {
      auto res = solve_given_speed(inst, *p.speed, po);
      order = res.order;
      cost = res.cost ? *res.cost : order_cost(inst, *p.speed, order);
      if (a.with_schedule) {
        auto ts = schedule_in_order(inst, *p.speed, order);
        r.schedule = schedule_json(inst, ts, res.schedule, {});
      }
    } else {
      auto ex = exact_given_speed(inst, *p.speed);
      order = ex.best_permutations.front();
      cost = *ex.exact_cost;
      if (a.with_schedule)
        r.schedule = schedule_json(inst, schedule_in_order(inst, *p.speed, order), tight_weight_schedule(inst, order), {});
    }
    r.wall_ms = elapsed_ms(t0);
    r.permutation = ids_of(inst, order);
    r.cost = cost.get_d();
    r.cost_exact = to_string(cost);
    if (a.compare && oracle_allowed(inst)) set_ratio(r, exact_given_speed(inst, *p.speed).cost);
    out.push_back(std::move(r));
    return out;
  }

  if (a.algo == "continuous" || (a.algo == "exact" && alpha && !p.menu)) {
    const Rational al = need_alpha();
    std::vector<Rational> bs;
    for (const auto& b : a.budgets) bs.push_back(parse_rational(b));
    if (bs.empty()) bs.push_back(need_budget());
    if (a.algo == "exact") {
      for (const auto& b : bs) {
        auto t0 = std::chrono::steady_clock::now();
        SolveReport r = base;
        r.budget = to_string(b);
        auto ex = exact_continuous(inst, al, b.get_d());
        auto split = optimal_energy_split(inst, ex.best_permutations.front(), al.get_d(), b.get_d());
        r.wall_ms = elapsed_ms(t0);
        r.permutation = ids_of(inst, split.order);
        r.cost = ex.cost;
        r.energy_used = split.assignment.total();
        if (a.with_schedule) {
          auto ts = continuous_time_schedule(inst, split.order, split.execution);
          r.schedule = schedule_json(inst, ts, tight_weight_schedule(inst, split.order), split.assignment.energies);
        }
        out.push_back(std::move(r));
      }
      return out;
    }
    auto t0 = std::chrono::steady_clock::now();
    auto seq = universal_sequence(inst, al.get_d(), po);
    const double seq_ms = elapsed_ms(t0);
    for (const auto& b : bs) {
      if (!(b > 0)) throw UsageError("budgets must be positive");
      auto t1 = std::chrono::steady_clock::now();
      SolveReport r = base;
      r.budget = to_string(b);
      auto split = optimal_energy_split(inst, seq.order, al.get_d(), b.get_d());
      r.wall_ms = seq_ms + elapsed_ms(t1);
      r.permutation = ids_of(inst, seq.order);
      r.cost = split.cost;
      r.energy_used = split.assignment.total();
      if (a.with_schedule) {
        auto ts = continuous_time_schedule(inst, seq.order, split.execution);
        r.schedule = schedule_json(inst, ts, tight_weight_schedule(inst, seq.order), split.assignment.energies);
      }
      if (a.compare && oracle_allowed(inst)) set_ratio(r, exact_continuous(inst, al, b.get_d()).cost);
      out.push_back(std::move(r));
    }
    return out;
  }

  if (a.algo == "discrete-ptas" || a.algo == "fptas" || (a.algo == "exact" && p.menu)) {
    const auto& menu = need_menu();
    const Rational b = need_budget();
    auto t0 = std::chrono::steady_clock::now();
    SolveReport r = base;
    r.budget = to_string(b);
    if (a.algo == "exact") {
      auto ex = exact_discrete(inst, menu, b.get_d());
      auto sol = solve_discrete_order(inst, menu, b.get_d(), ex.best_permutations.front());
      r.wall_ms = elapsed_ms(t0);
      r.permutation = ids_of(inst, ex.best_permutations.front());
      r.cost = ex.cost;
      r.energy_used = sol.energy;
      out.push_back(std::move(r));
      return out;
    }
    DiscreteSchedule ds;
    if (a.algo == "fptas") {
      FptasOptions fo;
      fo.eps = a.eps;
      ds = fptas(inst, menu, b, fo).schedule;
    } else {
      DiscretePtasOptions dopt;
      dopt.eps = a.eps;
      ds = discrete_ptas(inst, menu, b, dopt).schedule;
    }
    r.wall_ms = elapsed_ms(t0);
    r.permutation = ids_of(inst, ds.order);
    r.cost = ds.cost.get_d();
    r.cost_exact = to_string(ds.cost);
    r.energy_used = ds.energy_used.get_d();
    if (a.with_schedule) r.schedule = schedule_json(inst, ds.time, tight_weight_schedule(inst, ds.order), ds.energy.energies);
    if (a.compare && oracle_allowed(inst)) set_ratio(r, exact_discrete(inst, menu, b.get_d()).cost);
    out.push_back(std::move(r));
    return out;
  }

  if (a.algo == "parallel") {
    const Rational b = need_budget();
    ParallelOptions opt;
    opt.eps = a.eps;
    auto t0 = std::chrono::steady_clock::now();
    SolveReport r = base;
    r.budget = to_string(b);
    ParallelResult res;
    if (alpha && !p.menu)
      res = solve_parallel(inst, a.machines, alpha->get_d(), b.get_d(), opt);
    else
      res = solve_parallel(inst, a.machines, need_menu(), b, opt);
    r.wall_ms = elapsed_ms(t0);
    auto problem = check_parallel_schedule(inst, res.schedule);
    if (!problem.empty()) throw InvariantViolation("parallel schedule is infeasible: " + problem);
    r.permutation = ids_of(inst, res.schedule.priority);
    r.cost = res.schedule.cost.get_d();
    r.cost_exact = to_string(res.schedule.cost);
    for (double e : res.schedule.energy) r.energy_used += e;
    r.certified_bound = res.certified_bound;
    timeline = machine_timeline_csv(inst, res.schedule);
    if (r.cost > res.certified_bound * (1 + 1e-9)) throw InvariantViolation("parallel cost exceeds its certified bound");
    if (a.with_schedule) {
      r.schedule = parallel_schedule_json(inst, res.schedule);
      r.schedule["x_prime"] = res.x_prime;
      r.schedule["z1"] = res.relaxation.z1;
      r.schedule["release_term"] = res.release_term;
    }
    out.push_back(std::move(r));
    return out;
  }
  throw UsageError("unknown algorithm '" + a.algo + "' or missing speed model for it");
}

Problem generate(int n, std::uint64_t seed, const std::string& kind, int segments, int kappa, const std::string& alpha,
                 const std::optional<std::string>& budget, long releases, long vmax, long wmax, long max_speed) {
  RandomParams rp;
  rp.volume_max = vmax;
  rp.weight_max = wmax;
  rp.release_max = releases;
  Problem p;
  if (kind == "given") {
    if (releases > 0) throw UsageError("given-speed instances cannot carry release dates");
    rp.kind = InstanceKind::GivenSpeed;
    p.instance = gen_random(n, rp, seed);
    p.speed = gen_random_speed(segments, seed, max_speed);
  } else if (kind == "continuous") {
    rp.kind = InstanceKind::ContinuousEnergy;
    p.instance = gen_random(n, rp, seed);
    p.alpha = parse_rational(alpha);
    p.budget = budget ? parse_rational(*budget) : p.instance.total_volume();
  } else if (kind == "discrete") {
    rp.kind = InstanceKind::DiscreteEnergy;
    p.instance = gen_random(n, rp, seed);
    Rational al = parse_rational(alpha);
    if (al.get_den() != 1 || al < 1) throw UsageError("discrete menus need an integer alpha >= 1");
    p.menu = gen_random_menu(kappa, al.get_num().get_si(), seed, max_speed);
    p.budget = budget ? parse_rational(*budget) : default_discrete_budget(p.instance, *p.menu);
  } else {
    throw UsageError("--kind must be given, continuous or discrete");
  }
  return p;
}

// ---- bench ----

struct BenchRow {
  std::string algo;
  int n = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  double cost = 0.0, oracle = 0.0, ratio = 0.0;
};

BenchRow bench_one(const std::string& algo, int n, double eps, std::uint64_t seed) {
  BenchRow row{algo, n, eps, seed};
  RandomParams rp;
  if (algo == "ptas") {
    auto inst = gen_random(n, rp, seed);
    auto speed = gen_random_speed(3, seed);
    PtasOptions po;
    po.eps = eps;
    auto res = solve_given_speed(inst, speed, po);
    row.cost = (res.cost ? *res.cost : order_cost(inst, speed, res.order)).get_d();
    row.oracle = exact_given_speed(inst, speed, Execution::Serial).cost;
  } else if (algo == "continuous") {
    rp.kind = InstanceKind::ContinuousEnergy;
    auto inst = gen_random(n, rp, seed);
    PtasOptions po;
    po.eps = eps;
    const double E = inst.total_volume().get_d();
    auto seq = universal_sequence(inst, 2.0, po);
    row.cost = optimal_energy_split(inst, seq.order, 2.0, E).cost;
    row.oracle = exact_continuous(inst, Rational(2), E, Execution::Serial).cost;
  } else if (algo == "discrete-ptas" || algo == "fptas") {
    rp.kind = InstanceKind::DiscreteEnergy;
    auto inst = gen_random(n, rp, seed);
    auto menu = gen_random_menu(2, 2, seed);
    Rational E = default_discrete_budget(inst, menu);
    if (algo == "fptas") {
      FptasOptions fo;
      fo.eps = eps;
      fo.exec = Execution::Serial;
      row.cost = fptas(inst, menu, E, fo).schedule.cost.get_d();
    } else {
      DiscretePtasOptions dopt;
      dopt.eps = eps;
      row.cost = discrete_ptas(inst, menu, E, dopt).schedule.cost.get_d();
    }
    row.oracle = exact_discrete(inst, menu, E.get_d(), Execution::Serial).cost;
  } else {
    throw UsageError("unknown bench algorithm '" + algo + "'");
  }
  row.ratio = row.oracle > 0 ? row.cost / row.oracle : 1.0;
  return row;
}

std::string bench_csv(const std::vector<std::string>& algos, const std::vector<int>& sizes,
                      const std::vector<double>& eps_grid, int seeds) {
  for (const auto& a : algos)
    if (a != "ptas" && a != "continuous" && a != "discrete-ptas" && a != "fptas")
      throw UsageError("unknown bench algorithm '" + a + "'");
  for (int n : sizes)
    if (n < 1) throw UsageError("bench sizes must be positive");
  struct Task {
    std::string algo;
    int n;
    double eps;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const auto& a : algos)
    for (int n : sizes)
      for (double e : eps_grid)
        for (int s = 1; s <= seeds; ++s) tasks.push_back({a, n, e, static_cast<std::uint64_t>(s)});
  std::vector<BenchRow> rows(tasks.size());
  std::vector<std::string> errors(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(tasks.size()); ++i) {
    try {
      rows[i] = bench_one(tasks[i].algo, tasks[i].n, tasks[i].eps, tasks[i].seed);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw InvariantViolation("bench task failed: " + e);
  std::ostringstream out;
  out << "row,algo,n,eps,seed,cost,oracle_cost,ratio,median_ratio,max_ratio\n";
  for (const auto& r : rows)
    out << "run," << r.algo << ',' << r.n << ',' << format_double(r.eps) << ',' << r.seed << ','
        << format_double(r.cost) << ',' << format_double(r.oracle) << ',' << format_double(r.ratio) << ",,\n";
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t k = i;
    std::vector<double> rs;
    while (k < rows.size() && rows[k].algo == rows[i].algo && rows[k].n == rows[i].n && rows[k].eps == rows[i].eps)
      rs.push_back(rows[k++].ratio);
    std::sort(rs.begin(), rs.end());
    double med = rs.size() % 2 ? rs[rs.size() / 2] : 0.5 * (rs[rs.size() / 2 - 1] + rs[rs.size() / 2]);
    out << "cell," << rows[i].algo << ',' << rows[i].n << ',' << format_double(rows[i].eps) << ",,,,,"
        << format_double(med) << ',' << format_double(rs.back()) << '\n';
    i = k;
  }
  return out.str();
}

void write_or_print(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream f(*path);
  if (!f) throw IoError("cannot write " + *path);
  f << text;
}

json error_json(const std::string& kind, const std::string& message) {
  return json{{"error", kind}, {"message", message}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted completion time scheduling under varying speed and energy budgets", "varispeed"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  int gen_n = 0;
  std::uint64_t gen_seed = 1;
  std::optional<std::string> gen_out, gen_budget, gen_due;
  std::string gen_kind = "given", gen_alpha = "2";
  int gen_segments = 4, gen_kappa = 2;
  long gen_releases = 0, gen_vmax = 10, gen_wmax = 10, gen_speed = 4;
  bool gen_gadget = false;
  gen->add_option("-n", gen_n, "Number of jobs")->required()->check(CLI::Range(1, 1000000));
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("-o,--output", gen_out, "Output file (default: stdout)");
  gen->add_option("--kind", gen_kind, "given, continuous or discrete")->check(CLI::IsMember({"given", "continuous", "discrete"}));
  gen->add_option("--segments", gen_segments, "Speed profile segments (given)")->check(CLI::PositiveNumber);
  gen->add_option("--kappa", gen_kappa, "Menu size (discrete)")->check(CLI::PositiveNumber);
  gen->add_option("--alpha", gen_alpha, "Power exponent");
  gen->add_option("--budget", gen_budget, "Energy budget p/q");
  gen->add_option("--releases", gen_releases, "Largest release date (energy kinds)")->check(CLI::NonNegativeNumber);
  gen->add_option("--vmax", gen_vmax, "Largest volume")->check(CLI::PositiveNumber);
  gen->add_option("--wmax", gen_wmax, "Largest weight")->check(CLI::PositiveNumber);
  gen->add_option("--max-speed", gen_speed, "Largest speed")->check(CLI::PositiveNumber);
  gen->add_flag("--gadget", gen_gadget, "Two-speed gadget built from a random common-due-date tardiness instance");
  gen->add_option("--due", gen_due, "Due date for --gadget");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  std::string solve_in;
  SolveArgs sa;
  std::string budgets_text;
  std::optional<std::string> csv_path, timeline_path;
  solve->add_option("-i,--input", solve_in, "Instance file")->required();
  solve->add_option("--algo", sa.algo, "ptas, continuous, discrete-ptas, fptas, parallel or exact")
      ->required()
      ->check(CLI::IsMember({"ptas", "continuous", "discrete-ptas", "fptas", "parallel", "exact"}));
  solve->add_option("--eps", sa.eps, "Accuracy parameter");
  solve->add_option("--budget", sa.budget, "Energy budget p/q (overrides the file)");
  solve->add_option("--budgets", budgets_text, "Comma-separated budgets (continuous)");
  solve->add_option("--alpha", sa.alpha, "Power exponent (overrides the file)");
  solve->add_option("-m,--machines", sa.machines, "Machines (parallel)")->check(CLI::PositiveNumber);
  solve->add_flag("--compare-oracle", sa.compare, "Also run the exhaustive oracle and report the ratio");
  solve->add_flag("--schedule", sa.with_schedule, "Include the schedule in the JSON report");
  solve->add_option("--csv", csv_path, "Append report rows to this CSV file");
  solve->add_option("--timeline", timeline_path, "Write the machine timeline CSV (parallel)");
  solve->add_option("--seed", sa.seed, "Seed recorded in the report");

  // pareto
  auto* par = app.add_subcommand("pareto", "Cost against budget for the continuous model");
  std::string par_in, par_budgets;
  std::optional<std::string> par_alpha, par_out;
  double par_eps = 0.2;
  par->add_option("-i,--input", par_in, "Instance file")->required();
  par->add_option("--alpha", par_alpha, "Power exponent (overrides the file)");
  par->add_option("--eps", par_eps, "Accuracy parameter of the sequence");
  par->add_option("--budgets", par_budgets, "Comma-separated budgets (default: 16 powers of two around the file's budget)");
  par->add_option("-o,--output", par_out, "Output CSV (default: stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "Ratio table against the exhaustive oracles");
  std::string bench_algos = "ptas,continuous,discrete-ptas,fptas", bench_sizes = "4,5,6", bench_eps = "0.4,0.2,0.1";
  int bench_seeds = 5;
  std::optional<std::string> bench_out;
  bench->add_option("--algos", bench_algos, "Comma-separated algorithms");
  bench->add_option("--sizes", bench_sizes, "Comma-separated job counts");
  bench->add_option("--eps", bench_eps, "Comma-separated accuracy values");
  bench->add_option("--seeds", bench_seeds, "Seeds per cell")->check(CLI::NonNegativeNumber);
  bench->add_option("-o,--output", bench_out, "Output CSV (default: stdout)");

  std::vector<const char*> argv{"varispeed"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      Problem p;
      if (gen_gadget) {
        auto t = gen_random_tardiness(gen_n, gen_seed);
        if (gen_due) t.due = std::stol(*gen_due);
        auto g = gen_hardness_gadget(t, parse_rational(gen_alpha));
        p.instance = g.instance;
        p.menu = g.menu;
        p.budget = g.budget;
      } else {
        if (gen_due) throw UsageError("--due only applies with --gadget");
        p = generate(gen_n, gen_seed, gen_kind, gen_segments, gen_kappa, gen_alpha, gen_budget, gen_releases, gen_vmax,
                     gen_wmax, gen_speed);
      }
      if (gen_out)
        write_problem(*gen_out, p);
      else
        out << to_json(p).dump(2) << '\n';
      return kExitOk;
    }
    if (solve->parsed()) {
      Problem p = read_problem(solve_in);
      sa.budgets = split_list(budgets_text);
      std::string timeline;
      auto reports = solve_problem(p, sa, timeline);
      if (reports.size() == 1) {
        out << to_json(reports[0]).dump(2) << '\n';
      } else {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        out << arr.dump(2) << '\n';
      }
      if (csv_path) {
        bool fresh = !std::ifstream(*csv_path).good();
        std::ofstream f(*csv_path, std::ios::app);
        if (!f) throw IoError("cannot append to " + *csv_path);
        if (fresh) f << report_csv_header() << '\n';
        for (const auto& r : reports) f << report_csv_row(r) << '\n';
      }
      if (timeline_path) {
        if (sa.algo != "parallel") throw UsageError("--timeline applies to --algo parallel");
        std::ofstream f(*timeline_path);
        if (!f) throw IoError("cannot write " + *timeline_path);
        f << timeline;
      }
      return kExitOk;
    }
    if (par->parsed()) {
      Problem p = read_problem(par_in);
      Rational al = par_alpha ? parse_rational(*par_alpha) : (p.alpha ? *p.alpha : Rational(0));
      if (!(al > 1)) throw UsageError("pareto needs alpha > 1 (--alpha or \"alpha\" in the file)");
      std::vector<double> budgets;
      for (const auto& b : split_list(par_budgets)) budgets.push_back(parse_rational(b).get_d());
      if (budgets.empty()) {
        Rational center = p.budget ? *p.budget : p.instance.total_volume();
        budgets = default_budget_grid(center.get_d());
      }
      PtasOptions po;
      po.eps = par_eps;
      auto curve = pareto(p.instance, al.get_d(), po, budgets);
      std::string perm;
      for (int id : ids_of(p.instance, curve.order)) perm += (perm.empty() ? "" : " ") + std::to_string(id);
      std::ostringstream csv;
      csv << "budget,cost,gamma,permutation\n";
      for (const auto& s : curve.samples)
        csv << format_double(s.budget) << ',' << format_double(s.split.cost) << ',' << format_double(curve.gamma) << ','
            << perm << '\n';
      write_or_print(par_out, csv.str(), out);
      return kExitOk;
    }
    if (bench->parsed()) {
      std::vector<int> sizes;
      for (const auto& s : split_list(bench_sizes)) sizes.push_back(std::stoi(s));
      std::vector<double> eg;
      for (const auto& s : split_list(bench_eps)) eg.push_back(std::stod(s));
      write_or_print(bench_out, bench_csv(split_list(bench_algos), sizes, eg, bench_seeds), out);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InfeasibleBudget& e) {
    out << error_json("infeasible budget", e.what()).dump(2) << '\n';
    return kExitInfeasible;
  } catch (const InstanceTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    out << error_json("internal invariant violation", e.what()).dump(2) << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace varispeed
