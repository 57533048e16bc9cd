#include "raag/lifts.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "raag/word.hpp"

namespace raag {

namespace {

long long positive_mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

// x with a*x = g (mod m) is built from the extended Euclid pair.
long long mod_inverse(long long a, long long m) {
  long long old_r = positive_mod(a, m), r = m;
  long long old_s = 1, s = 0;
  while (r != 0) {
    long long q = old_r / r;
    std::swap(old_r -= q * r, r);
    std::swap(old_s -= q * s, s);
  }
  if (old_r != 1) throw std::invalid_argument("mod_inverse: not coprime");
  return positive_mod(old_s, m);
}

std::string component_to_string(const SimpleGraph& g,
                                const std::vector<int>& comp) {
  std::string out = "{";
  for (size_t i = 0; i < comp.size(); ++i)
    out += (i ? " " : "") + g.name(comp[i]);
  return out + "}";
}

}  // namespace

// ---------------------------------------------------------------------------
// ShiftSystem plumbing

long long ShiftSystem::total_shift(int v) const {
  long long sum = 0;
  for (long long s : shifts.at(v)) sum += s;
  return sum;
}

long long derive_class_shift(const SimpleGraph& g, const ShiftSystem& s,
                             const std::vector<int>& cls) {
  for (int v : cls)
    for (int w = 0; w < g.size(); ++w) {
      if (w == v || g.adjacent(v, w) || !dominates(g, v, w)) continue;
      const auto& comps = s.components.at(w);
      for (size_t ci = 0; ci < comps.size(); ++ci)
        if (comps[ci] == std::vector<int>{v}) return s.shifts.at(w).at(ci);
    }
  return 0;
}

ShiftSystem make_shift_system(
    const SimpleGraph& g, std::vector<long long> residues,
    const std::vector<std::pair<std::pair<int, std::vector<int>>, long long>>&
        values) {
  if (static_cast<int>(residues.size()) != g.size())
    throw std::invalid_argument("make_shift_system: one residue per vertex");
  for (long long r : residues)
    if (r < 1) throw std::invalid_argument("residues must be positive");

  ShiftSystem s;
  s.residues = std::move(residues);
  for (int v = 0; v < g.size(); ++v) {
    s.components.push_back(components_minus_star(g, v));
    s.shifts.emplace_back(s.components.back().size(), 0);
  }
  for (const auto& [key, value] : values) {
    auto [v, comp] = key;
    std::vector<int> sorted = comp;
    std::sort(sorted.begin(), sorted.end());
    const auto& comps = s.components.at(v);
    auto it = std::find(comps.begin(), comps.end(), sorted);
    if (it == comps.end())
      throw std::invalid_argument("make_shift_system: " +
                                  component_to_string(g, sorted) +
                                  " is not a component at " + g.name(v));
    s.shifts[v][it - comps.begin()] = value;
  }
  for (const auto& cls : domination_structure(g).classes)
    s.class_shifts.push_back(derive_class_shift(g, s, cls));
  return s;
}

long long shift_for(const ShiftSystem& s, const SimpleGraph& g, int v,
                    const std::vector<int>& component) {
  std::vector<int> sorted = component;
  std::sort(sorted.begin(), sorted.end());
  const auto& comps = s.components.at(v);
  auto it = std::find(comps.begin(), comps.end(), sorted);
  if (it == comps.end())
    throw std::invalid_argument("shift_for: not a component of the star complement");
  return s.shifts.at(v).at(it - comps.begin());
}

std::string shift_system_to_json(const SimpleGraph& g, const ShiftSystem& s) {
  nlohmann::json j;
  for (int v = 0; v < g.size(); ++v) j["residues"][g.name(v)] = s.residues.at(v);
  j["shifts"] = nlohmann::json::array();
  for (int v = 0; v < g.size(); ++v)
    for (size_t ci = 0; ci < s.components[v].size(); ++ci) {
      nlohmann::json entry;
      entry["vertex"] = g.name(v);
      entry["component"] = nlohmann::json::array();
      for (int u : s.components[v][ci]) entry["component"].push_back(g.name(u));
      entry["shift"] = s.shifts[v][ci];
      j["shifts"].push_back(entry);
    }
  const auto dom = domination_structure(g);
  for (size_t c = 0; c < dom.classes.size(); ++c)
    j["class_shifts"][g.name(dom.classes[c][0])] = s.class_shifts.at(c);
  return j.dump(2) + "\n";
}

ShiftSystem parse_shift_system(const SimpleGraph& g, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed shift file: ") + e.what());
  }
  std::vector<long long> residues(g.size(), 1);
  if (j.contains("residues"))
    for (auto& [name, r] : j.at("residues").items())
      residues.at(g.index_of(name)) = r.get<long long>();

  std::vector<std::pair<std::pair<int, std::vector<int>>, long long>> values;
  if (j.contains("shifts"))
    for (const auto& entry : j.at("shifts")) {
      int v = g.index_of(entry.at("vertex").get<std::string>());
      std::vector<int> comp;
      for (const auto& u : entry.at("component"))
        comp.push_back(g.index_of(u.get<std::string>()));
      values.push_back({{v, comp}, entry.at("shift").get<long long>()});
    }
  ShiftSystem s = make_shift_system(g, residues, values);
  if (j.contains("class_shifts")) {
    const auto dom = domination_structure(g);
    for (auto& [name, val] : j.at("class_shifts").items()) {
      int cls = dom.class_of.at(g.index_of(name));
      s.class_shifts.at(cls) = val.get<long long>();
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Condition checks

std::vector<ConditionReport> check_shift_conditions(const SimpleGraph& g,
                                                    const ShiftSystem& s) {
  std::vector<ConditionReport> reports;
  const auto dom = domination_structure(g);

  ConditionReport c1{1, true, {}};
  for (int v = 0; v < g.size(); ++v)
    for (int w = 0; w < g.size(); ++w) {
      if (v == w || !dom.less_eq(v, w)) continue;
      if (s.total_shift(v) != s.total_shift(w))
        c1.witnesses.push_back("S_" + g.name(v) + " != S_" + g.name(w));
    }
  c1.pass = c1.witnesses.empty();
  reports.push_back(std::move(c1));

  ConditionReport c2{2, true, {}};
  for (int v = 0; v < g.size(); ++v)
    for (int w = 0; w < g.size(); ++w) {
      if (v == w || !dom.less_eq(v, w)) continue;
      for (size_t ai = 0; ai < s.components[v].size(); ++ai) {
        const auto& A = s.components[v][ai];
        if (std::find(A.begin(), A.end(), w) != A.end()) continue;
        long long sum = 0;
        for (size_t bi = 0; bi < s.components[w].size(); ++bi) {
          const auto& B = s.components[w][bi];
          if (std::includes(A.begin(), A.end(), B.begin(), B.end()))
            sum += s.shifts[w][bi];
        }
        if (sum != s.shifts[v][ai])
          c2.witnesses.push_back("s_{" + g.name(v) + "," +
                                 component_to_string(g, A) +
                                 "} != sum over " + g.name(w));
      }
    }
  c2.pass = c2.witnesses.empty();
  reports.push_back(std::move(c2));

  ConditionReport c3{3, true, {}};
  for (const auto& sigma : graph_automorphisms(g, std::max(g.size(), 1))) {
    for (int v = 0; v < g.size(); ++v)
      for (size_t ai = 0; ai < s.components[v].size(); ++ai) {
        std::vector<int> image;
        for (int u : s.components[v][ai]) image.push_back(sigma[u]);
        std::sort(image.begin(), image.end());
        if (s.shifts[v][ai] != shift_for(s, g, sigma[v], image)) {
          c3.witnesses.push_back("s_{" + g.name(v) + "," +
                                 component_to_string(g, s.components[v][ai]) +
                                 "} not symmetric");
        }
      }
  }
  c3.pass = c3.witnesses.empty();
  reports.push_back(std::move(c3));

  ConditionReport c4{4, true, {}};
  for (int u = 0; u < g.size(); ++u) {
    std::vector<long long> seen;
    for (int w = 0; w < g.size(); ++w) {
      if (w == u || g.adjacent(u, w) || !dom.less_eq(u, w)) continue;
      const auto& comps = s.components[w];
      auto it = std::find(comps.begin(), comps.end(), std::vector<int>{u});
      if (it != comps.end()) seen.push_back(s.shifts[w][it - comps.begin()]);
    }
    for (size_t i = 1; i < seen.size(); ++i)
      if (seen[i] != seen[0])
        c4.witnesses.push_back("s_{w,{" + g.name(u) + "}} depends on w");
    bool adjacent_dominator = false;
    for (int w = 0; w < g.size(); ++w)
      if (w != u && g.adjacent(u, w) && dom.less_eq(u, w))
        adjacent_dominator = true;
    if (adjacent_dominator)
      for (long long val : seen)
        if (val != 0)
          c4.witnesses.push_back("s_{w,{" + g.name(u) +
                                 "}} must vanish (adjacent dominator)");
  }
  // Stored class shifts must agree with the raw data.
  for (size_t c = 0; c < dom.classes.size(); ++c)
    if (s.class_shifts.at(c) != derive_class_shift(g, s, dom.classes[c]))
      c4.witnesses.push_back("class shift at [" + g.name(dom.classes[c][0]) +
                             "] disagrees with s_{w,{v}}");
  c4.pass = c4.witnesses.empty();
  reports.push_back(std::move(c4));

  ConditionReport c5{5, true, {}};
  for (int v = 0; v < g.size(); ++v)
    if (positive_mod(s.total_shift(v) + 1, s.residues.at(v)) != 0)
      c5.witnesses.push_back("S_" + g.name(v) + " + 1 not divisible by r_" +
                             g.name(v));
  c5.pass = c5.witnesses.empty();
  reports.push_back(std::move(c5));

  return reports;
}

// ---------------------------------------------------------------------------
// Solver

namespace {

struct VarTable {
  std::vector<int> offset;  // per vertex
  int count = 0;

  VarTable(const SimpleGraph& g, const ShiftSystem& skeleton) {
    for (int v = 0; v < g.size(); ++v) {
      offset.push_back(count);
      count += static_cast<int>(skeleton.components[v].size());
    }
  }
  int var(int v, int comp_index) const { return offset[v] + comp_index; }
};

int component_index(const ShiftSystem& s, int v, const std::vector<int>& comp) {
  const auto& comps = s.components.at(v);
  auto it = std::find(comps.begin(), comps.end(), comp);
  if (it == comps.end()) throw std::logic_error("component lookup failed");
  return static_cast<int>(it - comps.begin());
}

}  // namespace

std::variant<ShiftSystem, ShiftInfeasible> solve_shift_system(
    const SimpleGraph& g, const std::vector<long long>& residues,
    long long budget) {
  ShiftSystem skeleton = make_shift_system(g, residues);
  VarTable vars(g, skeleton);
  const auto dom = domination_structure(g);

  std::vector<std::vector<long long>> rows;
  auto new_row = [&]() -> std::vector<long long>& {
    rows.emplace_back(vars.count, 0);
    return rows.back();
  };

  for (int v = 0; v < g.size(); ++v)
    for (int w = 0; w < g.size(); ++w) {
      if (v == w || !dom.less_eq(v, w)) continue;
      // Condition 1: equal shift totals along domination.
      auto& r1 = new_row();
      for (size_t ai = 0; ai < skeleton.components[v].size(); ++ai)
        r1[vars.var(v, static_cast<int>(ai))] += 1;
      for (size_t bi = 0; bi < skeleton.components[w].size(); ++bi)
        r1[vars.var(w, static_cast<int>(bi))] -= 1;
      // Condition 2: refinement of components away from w.
      for (size_t ai = 0; ai < skeleton.components[v].size(); ++ai) {
        const auto& A = skeleton.components[v][ai];
        if (std::find(A.begin(), A.end(), w) != A.end()) continue;
        auto& r2 = new_row();
        r2[vars.var(v, static_cast<int>(ai))] += 1;
        for (size_t bi = 0; bi < skeleton.components[w].size(); ++bi) {
          const auto& B = skeleton.components[w][bi];
          if (std::includes(A.begin(), A.end(), B.begin(), B.end()))
            r2[vars.var(w, static_cast<int>(bi))] -= 1;
        }
      }
    }

  // Condition 3: symmetry under every graph automorphism.
  for (const auto& sigma : graph_automorphisms(g, std::max(g.size(), 1)))
    for (int v = 0; v < g.size(); ++v)
      for (size_t ai = 0; ai < skeleton.components[v].size(); ++ai) {
        std::vector<int> image;
        for (int u : skeleton.components[v][ai]) image.push_back(sigma[u]);
        std::sort(image.begin(), image.end());
        int target = component_index(skeleton, sigma[v], image);
        if (sigma[v] == v && target == static_cast<int>(ai)) continue;
        auto& r = new_row();
        r[vars.var(v, static_cast<int>(ai))] += 1;
        r[vars.var(sigma[v], target)] -= 1;
      }

  // Condition 4: s_{w,{v}} independent of w; zero when an adjacent dominator
  // exists.
  for (int u = 0; u < g.size(); ++u) {
    std::vector<int> sites;  // var indices of s_{w,{u}}
    for (int w = 0; w < g.size(); ++w) {
      if (w == u || g.adjacent(u, w) || !dom.less_eq(u, w)) continue;
      const auto& comps = skeleton.components[w];
      auto it = std::find(comps.begin(), comps.end(), std::vector<int>{u});
      if (it != comps.end())
        sites.push_back(vars.var(w, static_cast<int>(it - comps.begin())));
    }
    for (size_t i = 1; i < sites.size(); ++i) {
      auto& r = new_row();
      r[sites[0]] += 1;
      r[sites[i]] -= 1;
    }
    bool adjacent_dominator = false;
    for (int w = 0; w < g.size(); ++w)
      if (w != u && g.adjacent(u, w) && dom.less_eq(u, w)) adjacent_dominator = true;
    if (adjacent_dominator)
      for (int site : sites) {
        auto& r = new_row();
        r[site] = 1;
      }
  }

  IntMatrix m(static_cast<int>(rows.size()), vars.count);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < vars.count; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
  std::vector<std::vector<long long>> basis = integer_kernel(m);
  int dim = static_cast<int>(basis.size());

  // Condition 5 on the solution lattice: for each vertex the coefficient of
  // t_j is the total shift of basis vector j at that vertex.
  std::vector<int> active;  // vertices with r_v > 1
  for (int v = 0; v < g.size(); ++v)
    if (residues[v] > 1) active.push_back(v);

  std::vector<std::vector<long long>> coeff(active.size(),
                                            std::vector<long long>(dim, 0));
  for (size_t i = 0; i < active.size(); ++i)
    for (int j = 0; j < dim; ++j) {
      long long sum = 0;
      for (size_t ci = 0; ci < skeleton.components[active[i]].size(); ++ci)
        sum += basis[j][vars.var(active[i], static_cast<int>(ci))];
      coeff[i][j] = sum;
    }

  long long modulus = 1;
  for (int v : active) modulus = std::lcm(modulus, residues[v]);

  // Individually unsolvable congruences give definite witnesses.
  ShiftInfeasible infeasible;
  infeasible.conditions = {5};
  for (size_t i = 0; i < active.size(); ++i) {
    long long gc = residues[active[i]];
    for (int j = 0; j < dim; ++j) gc = gcd_ll(gc, coeff[i][j]);
    if (gc != 1)
      infeasible.witnesses.push_back(
          "no total shift can be -1 mod " + std::to_string(residues[active[i]]) +
          " at " + g.name(active[i]));
  }
  if (!infeasible.witnesses.empty()) return infeasible;

  double space = 1;
  for (int j = 0; j < dim; ++j) space *= static_cast<double>(modulus);
  if (space > static_cast<double>(budget))
    throw std::invalid_argument("solve_shift_system: congruence search bound exceeded");

  std::vector<long long> t(dim, 0);
  while (true) {
    bool ok = true;
    for (size_t i = 0; i < active.size() && ok; ++i) {
      long long sum = 0;
      for (int j = 0; j < dim; ++j) sum += coeff[i][j] * t[j];
      ok = positive_mod(sum + 1, residues[active[i]]) == 0;
    }
    if (ok) {
      ShiftSystem out = skeleton;
      for (int v = 0; v < g.size(); ++v)
        for (size_t ci = 0; ci < out.components[v].size(); ++ci) {
          long long val = 0;
          for (int j = 0; j < dim; ++j)
            val += basis[j][vars.var(v, static_cast<int>(ci))] * t[j];
          out.shifts[v][ci] = val;
        }
      out.class_shifts.clear();
      for (const auto& cls : dom.classes)
        out.class_shifts.push_back(derive_class_shift(g, out, cls));
      return out;
    }
    int j = 0;
    for (; j < dim; ++j) {
      if (++t[j] < modulus) break;
      t[j] = 0;
    }
    if (j == dim) break;
  }

  for (int v : active)
    infeasible.witnesses.push_back("congruences at " + g.name(v) +
                                   " jointly unsolvable");
  return infeasible;
}

std::variant<ShiftSystem, ShiftInfeasible> corollary_ff_shifts(
    const SimpleGraph& g, long long r) {
  if (r < 1) throw std::invalid_argument("corollary_ff_shifts: r must be >= 1");
  auto graph_components = connected_components(g);
  long long m = static_cast<long long>(graph_components.size());

  long long s_value = 0;
  if (r > 1) {
    if (gcd_ll(m - 1, r) != 1) {
      ShiftInfeasible inf;
      inf.conditions = {5};
      inf.witnesses.push_back("gcd(r, m-1) = " +
                              std::to_string(gcd_ll(m - 1, r)) + " > 1");
      return inf;
    }
    s_value = positive_mod(-mod_inverse(m - 1, r), r);
  }

  std::vector<std::pair<std::pair<int, std::vector<int>>, long long>> values;
  for (int v = 0; v < g.size(); ++v)
    for (const auto& comp : components_minus_star(g, v))
      if (std::find(graph_components.begin(), graph_components.end(), comp) !=
          graph_components.end())
        values.push_back({{v, comp}, s_value});
  return make_shift_system(g, std::vector<long long>(g.size(), r), values);
}

bool center_trivial(const SimpleGraph& g) {
  for (int v = 0; v < g.size(); ++v)
    if (static_cast<int>(star(g, v).size()) == g.size()) return false;
  return g.size() > 0;
}

// ---------------------------------------------------------------------------
// Affine lifts

AffineLift affine_identity(int n) {
  return {IntMatrix::identity(n), std::vector<long long>(n, 0)};
}

AffineLift affine_compose(const AffineLift& f, const AffineLift& g) {
  AffineLift out;
  out.linear = multiply(f.linear, g.linear);
  out.shift = multiply(f.linear, g.shift);
  for (size_t i = 0; i < out.shift.size(); ++i) out.shift[i] += f.shift[i];
  return out;
}

IntMatrix abelianization_matrix(const SimpleGraph& g, const Endomorphism& e) {
  IntMatrix m(g.size(), g.size());
  for (int v = 0; v < g.size(); ++v) {
    AbelianVector col = abelianize(g, e.images.at(v));
    for (int u = 0; u < g.size(); ++u) m.at(u, v) = col[u];
  }
  long long det = determinant(m);
  if (det != 1 && det != -1)
    throw std::invalid_argument(
        "abelianization_matrix: determinant " + std::to_string(det) +
        " is not a unit (input is not an automorphism)");
  return m;
}

AffineLift lift_of_generator(const SimpleGraph& g, const LSGenerator& gen,
                             const ShiftSystem& s) {
  int n = g.size();
  AffineLift lift = affine_identity(n);
  const auto dom = domination_structure(g);
  if (auto* i = std::get_if<Inversion>(&gen)) {
    lift.linear.at(i->v, i->v) = -1;
    lift.shift[i->v] = s.class_shifts.at(dom.class_of[i->v]);
  } else if (auto* sym = std::get_if<GraphSymmetry>(&gen)) {
    lift.linear = IntMatrix::permutation(sym->sigma);
  } else if (auto* t = std::get_if<Transvection>(&gen)) {
    lift.linear.at(t->v, t->w) += 1;
  } else if (auto* p = std::get_if<PartialConjugation>(&gen)) {
    lift.shift[p->v] = shift_for(s, g, p->v, p->component);
  }
  return lift;
}

namespace {

// Shift length of the lift of a multiplier-type Whitehead automorphism, as
// accumulated from its factorization into partial conjugations and
// transvections. Only the multiplier axis is shifted.
long long type2_shift_length(const SimpleGraph& g, const WhiteheadAuto& w,
                             const ShiftSystem& s) {
  Letter a = w.multiplier;
  int v = a.vertex;
  long long eta = a.sign;
  long long total = 0;
  for (size_t ci = 0; ci < s.components.at(v).size(); ++ci) {
    const auto& comp = s.components[v][ci];
    bool whole = true;
    for (int u : comp)
      whole = whole && set_contains(w.set, {u, 1}) && set_contains(w.set, {u, -1});
    if (whole) total -= eta * s.shifts[v][ci];
  }
  std::vector<bool> in_star(g.size(), false);
  for (int u : star(g, v)) in_star[u] = true;
  for (int u = 0; u < g.size(); ++u) {
    if (in_star[u]) continue;
    if (set_contains(w.set, {u, 1}) && !set_contains(w.set, {u, -1}))
      total -= eta * shift_for(s, g, v, {u});
  }
  return total;
}

}  // namespace

AffineLift lift_of_whitehead(const SimpleGraph& g, const WhiteheadAuto& w,
                             const ShiftSystem& s) {
  int n = g.size();
  if (w.kind == WhiteheadAuto::Kind::Permutation) {
    const auto dom = domination_structure(g);
    AffineLift lift = affine_identity(n);
    lift.linear = IntMatrix::permutation(w.sigma);
    for (int u = 0; u < n; ++u)
      if ((w.inverted >> u) & 1) {
        for (int k = 0; k < n; ++k)
          lift.linear.at(u, k) = -lift.linear.at(u, k);
        lift.shift[u] = s.class_shifts.at(dom.class_of[u]);
      }
    return lift;
  }
  AffineLift lift;
  lift.linear = abelianization_matrix(g, endo_of_whitehead(g, w));
  lift.shift.assign(n, 0);
  lift.shift[w.multiplier.vertex] = type2_shift_length(g, w, s);
  return lift;
}

// ---------------------------------------------------------------------------
// Relation checker

struct LiftRelationChecker::Impl {
  SimpleGraph g;
  DominationStructure dom;
  int n = 0;
  int svar_count = 0;
  int var_count = 0;
  std::vector<int> offset;                      // per vertex
  std::vector<std::vector<std::vector<int>>> components;
  long long instances = 0;

  // The symbolic affine lift: integer linear part plus, per coordinate, a
  // linear form in the shift variables (s_{v,A} first, class shifts after).
  struct Symbolic {
    IntMatrix linear;
    std::vector<std::vector<long long>> shift;
  };

  std::unordered_map<std::uint64_t, Symbolic> lift_cache;

  struct Constraint {
    int relation;
    bool linear_ok;
    std::vector<std::vector<long long>> diff;  // n x var_count
    long long count;
    std::string representative;
  };
  std::vector<Constraint> constraints;
  std::map<std::pair<int, std::vector<long long>>, size_t> constraint_index;

  int var(int v, int comp_index) const { return offset[v] + comp_index; }
  int class_var(int cls) const { return svar_count + cls; }

  std::uint64_t encode(const WhiteheadAuto& w) const {
    if (w.kind == WhiteheadAuto::Kind::Multiplier) {
      std::uint64_t key = 2;
      key = key << 32 | w.set;
      key = key << 8 | static_cast<std::uint64_t>(2 * w.multiplier.vertex +
                                                  (w.multiplier.sign < 0));
      return key;
    }
    std::uint64_t key = 1;
    for (int v = 0; v < n; ++v) key = key << 4 | static_cast<std::uint64_t>(w.sigma[v]);
    key = key << 16 | w.inverted;
    return key;
  }

  Symbolic symbolic_identity() const {
    Symbolic s;
    s.linear = IntMatrix::identity(n);
    s.shift.assign(n, std::vector<long long>(var_count, 0));
    return s;
  }

  Symbolic compose_symbolic(const Symbolic& f, const Symbolic& e) const {
    Symbolic out;
    out.linear = multiply(f.linear, e.linear);
    out.shift.assign(n, std::vector<long long>(var_count, 0));
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        long long c = f.linear.at(i, k);
        if (c == 0) continue;
        for (int j = 0; j < var_count; ++j) out.shift[i][j] += c * e.shift[k][j];
      }
      for (int j = 0; j < var_count; ++j) out.shift[i][j] += f.shift[i][j];
    }
    return out;
  }

  const Symbolic& symbolic_lift(const WhiteheadAuto& w) {
    auto key = encode(w);
    auto it = lift_cache.find(key);
    if (it != lift_cache.end()) return it->second;

    Symbolic sym;
    sym.shift.assign(n, std::vector<long long>(var_count, 0));
    if (w.kind == WhiteheadAuto::Kind::Permutation) {
      sym.linear = IntMatrix::permutation(w.sigma);
      for (int u = 0; u < n; ++u)
        if ((w.inverted >> u) & 1) {
          for (int k = 0; k < n; ++k)
            sym.linear.at(u, k) = -sym.linear.at(u, k);
          sym.shift[u][class_var(dom.class_of[u])] += 1;
        }
    } else {
      sym.linear = abelianization_matrix(g, endo_of_whitehead(g, w));
      Letter a = w.multiplier;
      int v = a.vertex;
      long long eta = a.sign;
      for (size_t ci = 0; ci < components[v].size(); ++ci) {
        const auto& comp = components[v][ci];
        bool whole = true;
        for (int u : comp)
          whole = whole && set_contains(w.set, {u, 1}) &&
                  set_contains(w.set, {u, -1});
        if (whole) sym.shift[v][var(v, static_cast<int>(ci))] -= eta;
      }
      std::vector<bool> in_star(n, false);
      for (int u : star(g, v)) in_star[u] = true;
      for (int u = 0; u < n; ++u) {
        if (in_star[u]) continue;
        if (set_contains(w.set, {u, 1}) && !set_contains(w.set, {u, -1})) {
          auto it2 = std::find(components[v].begin(), components[v].end(),
                               std::vector<int>{u});
          if (it2 == components[v].end())
            throw std::logic_error("singleton carried letter is not isolated");
          sym.shift[v][var(v, static_cast<int>(it2 - components[v].begin()))] -=
              eta;
        }
      }
    }
    return lift_cache.emplace(key, std::move(sym)).first->second;
  }

  Symbolic materialize_side(const std::vector<WhiteheadAuto>& side) {
    Symbolic acc = symbolic_identity();
    for (auto it = side.rbegin(); it != side.rend(); ++it)
      acc = compose_symbolic(symbolic_lift(*it), acc);
    return acc;
  }

  void add_instance(const DayInstance& inst) {
    ++instances;
    Symbolic lhs = materialize_side(inst.lhs);
    Symbolic rhs = materialize_side(inst.rhs);
    bool linear_ok = lhs.linear == rhs.linear;
    std::vector<long long> flat;
    flat.reserve(static_cast<size_t>(n) * var_count + 1);
    bool trivial = linear_ok;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < var_count; ++j) {
        long long d = lhs.shift[i][j] - rhs.shift[i][j];
        trivial = trivial && d == 0;
        flat.push_back(d);
      }
    if (trivial) return;  // holds for every shift assignment
    flat.push_back(linear_ok ? 1 : 0);
    auto key = std::make_pair(inst.relation, std::move(flat));
    auto it = constraint_index.find(key);
    if (it != constraint_index.end()) {
      ++constraints[it->second].count;
      return;
    }
    Constraint c;
    c.relation = inst.relation;
    c.linear_ok = linear_ok;
    c.diff.assign(n, std::vector<long long>(var_count, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < var_count; ++j)
        c.diff[i][j] = lhs.shift[i][j] - rhs.shift[i][j];
    c.count = 1;
    c.representative = "lhs:";
    for (const auto& w : inst.lhs)
      c.representative += " " + whitehead_to_string(g, w);
    c.representative += " rhs:";
    for (const auto& w : inst.rhs)
      c.representative += " " + whitehead_to_string(g, w);
    constraint_index.emplace(key, constraints.size());
    constraints.push_back(std::move(c));
  }
};

LiftRelationChecker::LiftRelationChecker(const SimpleGraph& g, int max_vertices)
    : impl_(std::make_unique<Impl>()) {
  impl_->g = g;
  impl_->dom = domination_structure(g);
  impl_->n = g.size();
  for (int v = 0; v < g.size(); ++v) {
    impl_->offset.push_back(impl_->svar_count);
    impl_->components.push_back(components_minus_star(g, v));
    impl_->svar_count += static_cast<int>(impl_->components.back().size());
  }
  impl_->var_count =
      impl_->svar_count + static_cast<int>(impl_->dom.classes.size());
  for_each_day_instance(
      g, [&](const DayInstance& inst) { impl_->add_instance(inst); },
      max_vertices);
}

LiftRelationChecker::~LiftRelationChecker() = default;
LiftRelationChecker::LiftRelationChecker(LiftRelationChecker&&) noexcept = default;

long long LiftRelationChecker::instance_count() const { return impl_->instances; }

LiftReport LiftRelationChecker::check(const ShiftSystem& s) const {
  LiftReport report;
  report.instances = impl_->instances;

  std::vector<long long> values;
  values.reserve(impl_->var_count);
  for (int v = 0; v < impl_->n; ++v)
    for (long long x : s.shifts.at(v)) values.push_back(x);
  for (long long x : s.class_shifts) values.push_back(x);
  if (static_cast<int>(values.size()) != impl_->var_count)
    throw std::invalid_argument("shift system does not match the graph");

  for (const auto& c : impl_->constraints) {
    bool fails = !c.linear_ok;
    if (!fails)
      for (int i = 0; i < impl_->n && !fails; ++i) {
        long long dot = 0;
        for (int j = 0; j < impl_->var_count; ++j)
          dot += c.diff[i][j] * values[j];
        fails = dot != 0;
      }
    if (fails) {
      report.failure_count += c.count;
      report.linear_parts_ok = report.linear_parts_ok && c.linear_ok;
      if (report.failures.size() < 20)
        report.failures.push_back({c.relation, c.count, c.representative});
    }
  }
  return report;
}

LiftReport verify_relations_on_lifts(const SimpleGraph& g, const ShiftSystem& s,
                                     int max_vertices) {
  return LiftRelationChecker(g, max_vertices).check(s);
}

InnerKilledReport verify_inner_killed(const SimpleGraph& g,
                                      const ShiftSystem& s) {
  InnerKilledReport report;
  for (int v = 0; v < g.size(); ++v) {
    InnerKilledEntry entry;
    entry.vertex = v;
    entry.total_shift = s.total_shift(v);
    entry.residue = s.residues.at(v);
    entry.pass = positive_mod(entry.total_shift + 1, entry.residue) == 0;
    report.all_pass = report.all_pass && entry.pass;
    report.entries.push_back(entry);
  }
  return report;
}

}  // namespace raag
