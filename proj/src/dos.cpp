#include "bubble/dos.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace bubble {

namespace {

std::vector<Atom> atoms_for_generations(int b, int first, int last) {
  const auto f = DecimationFunctions::canonical(b);
  const auto e = exceptional_set(b);
  std::vector<Atom> out;
  std::vector<Atom> current{{to_double(e[0]), 0, 0, 0}, {to_double(e[1]), 0, 1, 0}};
  std::uint64_t place = 1;
  for (int m = 0; m <= last; ++m) {
    if (m >= first) out.insert(out.end(), current.begin(), current.end());
    if (m == last) break;
    std::vector<Atom> next;
    next.reserve(current.size() * 3);
    for (const auto &a : current)
      for (Branch j : kBranches)
        next.push_back({f.inverse_branch(j, a.location), m + 1, a.seed,
                        static_cast<std::uint64_t>(j) * place + a.word});
    current = std::move(next);
    place *= 3;
  }
  std::sort(out.begin(), out.end(),
            [](const Atom &x, const Atom &y) { return x.location < y.location; });
  return out;
}

std::uint64_t pow3(int n) {
  std::uint64_t p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

} // namespace

std::vector<std::int64_t> AtomicMeasure::generation_counts() const {
  std::vector<std::int64_t> counts(generation_weights.size(), 0);
  for (const auto &a : atoms) ++counts[static_cast<std::size_t>(a.generation)];
  return counts;
}

Rational AtomicMeasure::mass() const {
  const auto counts = generation_counts();
  Rational total = 0;
  for (std::size_t g = 0; g < counts.size(); ++g) total += counts[g] * generation_weights[g];
  return total;
}

Rational AtomicMeasure::cumulative(double x) const {
  std::vector<std::int64_t> counts(generation_weights.size(), 0);
  for (const auto &a : atoms) {
    if (a.location > x) break;
    ++counts[static_cast<std::size_t>(a.generation)];
  }
  Rational total = 0;
  for (std::size_t g = 0; g < counts.size(); ++g)
    if (counts[g] != 0) total += counts[g] * generation_weights[g];
  return total;
}

double AtomicMeasure::integrate(const std::function<double(double)> &f) const {
  std::vector<double> sums(generation_weights.size(), 0.0);
  for (const auto &a : atoms) sums[static_cast<std::size_t>(a.generation)] += f(a.location);
  double total = 0.0;
  for (std::size_t g = 0; g < sums.size(); ++g) total += to_double(generation_weights[g]) * sums[g];
  return total;
}

Rational finite_weight(int b, int level, int generation) {
  if (generation < 0 || generation >= level) return Rational(0);
  const Integer num = (b - 1) * ipow(b + 2, level - generation - 1) + 2;
  const Integer den = 2 * (ipow(b + 2, level) - 1);
  return Rational(num, den);
}

Rational limit_weight(int b, int generation) {
  return Rational(Integer(b - 1), 2 * ipow(b + 2, generation + 1));
}

Rational limit_tail_bound(int b, int depth) { return pow(make_rational(3, b + 2), depth + 1); }

AtomicMeasure finite_dos(BranchingParameter b, int level) {
  if (level < 1) throw DomainError("finite_dos needs level >= 1");
  AtomicMeasure m;
  m.b = b;
  m.atoms = atoms_for_generations(b, 0, level - 1);
  for (int g = 0; g < level; ++g) m.generation_weights.push_back(finite_weight(b, level, g));
  return m;
}

AtomicMeasure limit_dos(BranchingParameter b, int depth) {
  if (depth < 0) throw DomainError("limit_dos needs depth >= 0");
  AtomicMeasure m;
  m.b = b;
  m.atoms = atoms_for_generations(b, 0, depth);
  for (int g = 0; g <= depth; ++g) m.generation_weights.push_back(limit_weight(b, g));
  m.declared_tail_bound = limit_tail_bound(b, depth);
  return m;
}

AtomicMeasure brolin_measure(BranchingParameter b, int generation) {
  if (generation < 0) throw DomainError("brolin_measure needs m >= 0");
  AtomicMeasure m;
  m.b = b;
  m.atoms = atoms_for_generations(b, generation, generation);
  m.generation_weights.assign(static_cast<std::size_t>(generation) + 1, Rational(0));
  m.generation_weights.back() = Rational(Integer(1), 2 * ipow(3, generation));
  return m;
}

CountingValue counting_function(const AtomicMeasure &limit, double x) {
  return {limit.cumulative(x), limit.declared_tail_bound};
}

CountingValue counting_function(BranchingParameter b, int depth, double x) {
  return counting_function(limit_dos(b, depth), x);
}

Rational self_similarity_residual(BranchingParameter b, int depth) {
  if (depth < 1) throw DomainError("self_similarity_residual needs M >= 1");
  const AtomicMeasure nu = limit_dos(b, depth);

  struct KeyHash {
    std::size_t operator()(const std::tuple<int, int, std::uint64_t> &k) const {
      auto [g, s, w] = k;
      return std::hash<std::uint64_t>{}(w * 131 + static_cast<std::uint64_t>(g * 2 + s));
    }
  };
  std::unordered_map<std::tuple<int, int, std::uint64_t>, std::size_t, KeyHash> index;
  for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
    const auto &a = nu.atoms[i];
    index.emplace(std::make_tuple(a.generation, a.seed, a.word), i);
  }
  auto weight_of = [&](int g, int s, std::uint64_t w) -> Rational {
    auto it = index.find({g, s, w});
    return it == index.end() ? Rational(0) : nu.weight(nu.atoms[it->second]);
  };

  const Rational ratio = b.value() + 2;
  const Rational eb_mass = make_rational(b.value() - 1, 2 * (b.value() + 2));
  Rational worst = 0;
  auto record = [&](Rational d) {
    if (d < 0) d = -d;
    if (d > worst) worst = d;
  };
  for (const auto &a : nu.atoms) {
    const Rational w = nu.weight(a);
    if (a.generation == 0) {
      record(w - eb_mass);
    } else {
      const std::uint64_t parent = a.word % pow3(a.generation - 1);
      record(ratio * w - weight_of(a.generation - 1, a.seed, parent));
    }
    if (a.generation < depth && a.generation > 0) {
      const std::uint64_t place = pow3(a.generation);
      for (int j = 0; j < 3; ++j)
        record(2 * ratio * weight_of(a.generation + 1, a.seed, j * place + a.word) - 2 * w);
    }
  }
  return worst;
}

double PiecewiseLinear::operator()(double x) const {
  if (knots.empty()) return 0.0;
  if (x <= knots.front()) return values.front();
  if (x >= knots.back()) return values.back();
  const auto it = std::upper_bound(knots.begin(), knots.end(), x);
  const auto i = static_cast<std::size_t>(it - knots.begin());
  const double t = (x - knots[i - 1]) / (knots[i] - knots[i - 1]);
  return values[i - 1] + t * (values[i] - values[i - 1]);
}

ConvergenceReport convergence_diagnostic(const AtomicMeasure &limit, int level,
                                         const std::function<double(double)> &f) {
  const int b = limit.b;
  const int depth = limit.max_generation();
  if (level < 1) throw DomainError("convergence_diagnostic needs level >= 1");
  if (level > depth) throw DomainError("convergence_diagnostic needs level <= truncation depth");

  std::vector<double> sums(static_cast<std::size_t>(depth) + 1, 0.0);
  for (const auto &a : limit.atoms) sums[static_cast<std::size_t>(a.generation)] += f(a.location);

  const Rational scale = pow(make_rational(b + 2, 3), level);
  ConvergenceReport r{level, depth, 0.0, 0.0, 0.0, 0.0, 0.0};
  for (int m = 0; m <= depth; ++m) {
    const Rational lim = limit_weight(b, m);
    const Rational fin = finite_weight(b, level, m);
    const double fm = sums[static_cast<std::size_t>(m)];
    r.lhs += to_double(scale * (lim - fin)) * fm;
    if (m < level)
      r.head += to_double(scale * (fin - lim)) * fm;
    else
      r.tail += to_double(scale * lim) * fm;
  }
  r.rhs = to_double(Rational(Integer(1), ipow(3, depth))) * sums.back();
  r.gap = std::abs(r.lhs - r.rhs);
  return r;
}

ConvergenceReport convergence_diagnostic(BranchingParameter b, int level,
                                         const std::function<double(double)> &f, int depth) {
  return convergence_diagnostic(limit_dos(b, depth), level, f);
}

Rational Staircase::operator()(double x) const {
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  if (it == breakpoints.begin()) return Rational(0);
  return values[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

Staircase staircase(const AtomicMeasure &measure) {
  Staircase s;
  s.breakpoints.reserve(measure.size());
  s.values.reserve(measure.size());
  Rational running = 0;
  for (const auto &a : measure.atoms) {
    running += measure.weight(a);
    s.breakpoints.push_back(a.location);
    s.values.push_back(running);
  }
  return s;
}

} // namespace bubble
