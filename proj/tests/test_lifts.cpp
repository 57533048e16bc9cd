#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "raag/lifts.hpp"

using namespace raag;

namespace {
Letter L(int v, int s) { return Letter{v, s}; }

ShiftSystem solved(const SimpleGraph& g, const std::vector<long long>& residues) {
  auto result = solve_shift_system(g, residues);
  REQUIRE(std::holds_alternative<ShiftSystem>(result));
  return std::get<ShiftSystem>(result);
}

bool all_conditions_pass(const SimpleGraph& g, const ShiftSystem& s) {
  for (const auto& report : check_shift_conditions(g, s))
    if (!report.pass) return false;
  return true;
}
}  // namespace

TEST_CASE("abelianization matrices of the standard generators") {
  SimpleGraph n2 = SimpleGraph::edgeless(2);

  IntMatrix inv = abelianization_matrix(n2, endo_of_ls(n2, Inversion{0}));
  CHECK(inv.at(0, 0) == -1);
  CHECK(inv.at(1, 1) == 1);
  CHECK(inv.at(0, 1) == 0);

  IntMatrix lam = abelianization_matrix(n2, endo_of_ls(n2, Transvection{0, 1}));
  CHECK(lam.at(0, 1) == 1);  // I + E_vw
  CHECK(lam.at(0, 0) == 1);
  CHECK(lam.at(1, 1) == 1);

  IntMatrix gam = abelianization_matrix(
      n2, endo_of_ls(n2, PartialConjugation{0, {1}}));
  CHECK(gam == IntMatrix::identity(2));

  Endomorphism squash = identity_endo(n2);
  squash.images[1] = squash.images[0];
  CHECK_THROWS(abelianization_matrix(n2, squash));
}

TEST_CASE("abelianization is functorial on sampled pairs") {
  std::mt19937 rng(77);
  for (const auto& g : oracle::graph_isomorphism_classes(3)) {
    auto gens = ls_generators(g);
    for (int trial = 0; trial < 25; ++trial) {
      const auto& g1 = gens[rng() % gens.size()];
      const auto& g2 = gens[rng() % gens.size()];
      Endomorphism e1 = endo_of_ls(g, g1), e2 = endo_of_ls(g, g2);
      CHECK(abelianization_matrix(g, compose(g, e1, e2)) ==
            multiply(abelianization_matrix(g, e1), abelianization_matrix(g, e2)));
    }
  }
}

TEST_CASE("shift solving on the disconnected pair") {
  SimpleGraph n2 = SimpleGraph::edgeless(2);

  ShiftSystem s3 = solved(n2, {3, 3});
  CHECK(shift_for(s3, n2, 0, {1}) == 2);
  CHECK(shift_for(s3, n2, 1, {0}) == 2);
  CHECK(s3.total_shift(0) == 2);

  ShiftSystem s2 = solved(n2, {2, 2});
  CHECK(shift_for(s2, n2, 0, {1}) == 1);

  CHECK(all_conditions_pass(n2, s3));
  CHECK(all_conditions_pass(n2, s2));
}

TEST_CASE("cliques admit shifts only for trivial residues") {
  SimpleGraph k2 = SimpleGraph::complete(2);
  auto bad = solve_shift_system(k2, {2, 2});
  REQUIRE(std::holds_alternative<ShiftInfeasible>(bad));
  CHECK(std::get<ShiftInfeasible>(bad).conditions == std::vector<int>{5});

  auto good = solve_shift_system(k2, {1, 1});
  CHECK(std::holds_alternative<ShiftSystem>(good));
}

TEST_CASE("condition checker flags corrupted systems") {
  SimpleGraph n2 = SimpleGraph::edgeless(2);
  ShiftSystem zero = make_shift_system(n2, {2, 2});
  auto reports = check_shift_conditions(n2, zero);
  REQUIRE(reports.size() == 5);
  CHECK(reports[0].pass);
  CHECK(reports[1].pass);
  CHECK(reports[2].pass);
  CHECK(reports[3].pass);
  CHECK_FALSE(reports[4].pass);
  CHECK(!reports[4].witnesses.empty());

  // Asymmetric values break conditions 1 and 3.
  ShiftSystem lopsided = make_shift_system(n2, {3, 3}, {{{0, {1}}, 2}, {{1, {0}}, 5}});
  auto lop = check_shift_conditions(n2, lopsided);
  CHECK_FALSE(lop[0].pass);
  CHECK_FALSE(lop[2].pass);
}

TEST_CASE("free-quotient closed-form shifts") {
  SimpleGraph n2 = SimpleGraph::edgeless(2);
  auto s = corollary_ff_shifts(n2, 3);
  REQUIRE(std::holds_alternative<ShiftSystem>(s));
  CHECK(shift_for(std::get<ShiftSystem>(s), n2, 0, {1}) == 2);
  CHECK(all_conditions_pass(n2, std::get<ShiftSystem>(s)));

  SimpleGraph n3 = SimpleGraph::edgeless(3);
  CHECK(std::holds_alternative<ShiftInfeasible>(corollary_ff_shifts(n3, 2)));
  auto s33 = corollary_ff_shifts(n3, 3);
  REQUIRE(std::holds_alternative<ShiftSystem>(s33));
  CHECK(shift_for(std::get<ShiftSystem>(s33), n3, 0, {1}) == 1);
  CHECK(all_conditions_pass(n3, std::get<ShiftSystem>(s33)));

  // Connected graph: m = 1, so only r = 1 works.
  SimpleGraph p3 = SimpleGraph::path(3);
  CHECK(std::holds_alternative<ShiftInfeasible>(corollary_ff_shifts(p3, 2)));
  CHECK(std::holds_alternative<ShiftSystem>(corollary_ff_shifts(p3, 1)));
}

TEST_CASE("solver output always satisfies the conditions") {
  std::mt19937 rng(88);
  for (int n = 2; n <= 4; ++n)
    for (const auto& g : oracle::graph_isomorphism_classes(n)) {
      for (int trial = 0; trial < 6; ++trial) {
        std::vector<long long> residues;
        for (int v = 0; v < n; ++v) residues.push_back(1 + rng() % 4);
        auto result = solve_shift_system(g, residues);
        if (std::holds_alternative<ShiftSystem>(result))
          CHECK(all_conditions_pass(g, std::get<ShiftSystem>(result)));
      }
    }
}

TEST_CASE("generator lifts") {
  SimpleGraph n2 = SimpleGraph::edgeless(2);
  ShiftSystem s = solved(n2, {3, 3});

  AffineLift gam = lift_of_generator(n2, PartialConjugation{0, {1}}, s);
  CHECK(gam.linear == IntMatrix::identity(2));
  CHECK(gam.shift == std::vector<long long>{2, 0});

  AffineLift lam = lift_of_generator(n2, Transvection{0, 1}, s);
  CHECK(lam.shift == std::vector<long long>{0, 0});
  CHECK(lam.linear.at(0, 1) == 1);

  AffineLift inv = lift_of_generator(n2, Inversion{0}, s);
  CHECK(inv.linear.at(0, 0) == -1);
  CHECK(inv.shift == std::vector<long long>{2, 0});  // s_[v] from s_{w,{v}}
}

TEST_CASE("whitehead lifts agree with their standard factorizations") {
  SimpleGraph n2 = SimpleGraph::edgeless(2);
  ShiftSystem s = solved(n2, {3, 3});

  // rho_{v,w} = lambda_{v,w} gamma_{v,{w}}^{-1} at the affine level.
  WhiteheadAuto rho = WhiteheadAuto::type2(
      letter_bit(L(0, 1)) | letter_bit(L(1, 1)), L(0, 1));
  AffineLift lam = lift_of_generator(n2, Transvection{0, 1}, s);
  AffineLift gam = lift_of_generator(n2, PartialConjugation{0, {1}}, s);
  AffineLift gam_inv{unimodular_inverse(gam.linear), {}};
  gam_inv.shift = multiply(gam_inv.linear, gam.shift);
  for (auto& x : gam_inv.shift) x = -x;
  CHECK(lift_of_whitehead(n2, rho, s) == affine_compose(lam, gam_inv));

  // The full conjugation carries the total shift.
  WhiteheadAuto gv = WhiteheadAuto::type2(
      full_letter_set(2) & ~letter_bit(L(0, -1)), L(0, 1));
  AffineLift lift = lift_of_whitehead(n2, gv, s);
  CHECK(lift.linear == IntMatrix::identity(2));
  CHECK(lift.shift == std::vector<long long>{-2, 0});
}

TEST_CASE("lift of a conjugated inversion is the inversion at the image") {
  for (const auto& g : oracle::graph_isomorphism_classes(3)) {
    std::vector<long long> residues(3, 1);
    ShiftSystem s = solved(g, residues);
    for (const auto& sigma : graph_automorphisms(g))
      for (int v = 0; v < g.size(); ++v) {
        AffineLift left = affine_compose(
            lift_of_generator(g, GraphSymmetry{sigma}, s),
            affine_compose(
                lift_of_generator(g, Inversion{v}, s),
                lift_of_generator(g, GraphSymmetry{inverse(sigma)}, s)));
        AffineLift right = lift_of_generator(g, Inversion{sigma[v]}, s);
        CHECK(left == right);
      }
  }
}

TEST_CASE("relations hold on lifts for feasible systems") {
  SimpleGraph n2 = SimpleGraph::edgeless(2);
  ShiftSystem s = solved(n2, {3, 3});
  LiftReport report = verify_relations_on_lifts(n2, s);
  CHECK(report.instances > 0);
  CHECK(report.failure_count == 0);
  CHECK(report.linear_parts_ok);

  SimpleGraph p3 = SimpleGraph::path(3);
  ShiftSystem s1 = solved(p3, {1, 1, 1});
  LiftReport rp3 = verify_relations_on_lifts(p3, s1);
  CHECK(rp3.failure_count == 0);
}

TEST_CASE("corrupted shifts break relation instances") {
  SimpleGraph n2 = SimpleGraph::edgeless(2);
  ShiftSystem bad = make_shift_system(n2, {3, 3}, {{{0, {1}}, 2}, {{1, {0}}, 5}});
  LiftReport report = verify_relations_on_lifts(n2, bad);
  CHECK(report.failure_count > 0);
  CHECK(!report.failures.empty());
  CHECK(report.linear_parts_ok);  // only the translation parts disagree
}

TEST_CASE("inner automorphisms land in the deck lattice") {
  SimpleGraph n2 = SimpleGraph::edgeless(2);
  ShiftSystem good = solved(n2, {3, 3});
  CHECK(verify_inner_killed(n2, good).all_pass);

  ShiftSystem bad = make_shift_system(n2, {3, 3}, {{{0, {1}}, 1}, {{1, {0}}, 1}});
  auto report = verify_inner_killed(n2, bad);
  CHECK_FALSE(report.all_pass);
  CHECK(report.entries[0].total_shift == 1);

  SimpleGraph k2 = SimpleGraph::complete(2);
  CHECK(verify_inner_killed(k2, make_shift_system(k2, {1, 1})).all_pass);
}

TEST_CASE("center triviality criterion") {
  CHECK(center_trivial(SimpleGraph::edgeless(2)));
  CHECK(center_trivial(SimpleGraph::path(4)));
  CHECK_FALSE(center_trivial(SimpleGraph::complete(2)));
  CHECK_FALSE(center_trivial(SimpleGraph::path(3)));  // st(b) = V
}

TEST_CASE("every generated lift is unimodular") {
  std::mt19937 rng(99);
  for (const auto& g : oracle::graph_isomorphism_classes(3)) {
    ShiftSystem s = solved(g, {1, 1, 1});
    for (const auto& gen : ls_generators(g)) {
      long long det = determinant(lift_of_generator(g, gen, s).linear);
      CHECK((det == 1 || det == -1));
    }
    for (const auto& w : enumerate_whitehead(g)) {
      long long det = determinant(lift_of_whitehead(g, w, s).linear);
      CHECK((det == 1 || det == -1));
    }
  }
}

TEST_CASE("shift systems serialize and parse") {
  SimpleGraph n2 = SimpleGraph::edgeless(2);
  ShiftSystem s = solved(n2, {3, 3});
  std::string text = shift_system_to_json(n2, s);
  ShiftSystem back = parse_shift_system(n2, text);
  CHECK(back.residues == s.residues);
  CHECK(back.shifts == s.shifts);
  CHECK(back.class_shifts == s.class_shifts);
}
