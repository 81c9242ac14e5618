#include "doctest.h"

#include <stdexcept>

#include "qpa/tilting.hpp"
#include "test_util.hpp"

using namespace qpa;

namespace {
const FieldSpec kQ = FieldSpec::Q();
const FieldSpec kF2 = FieldSpec::F(2);
const FieldSpec kF101 = FieldSpec::F(101);
}  // namespace

TEST_CASE("paper tilting complex structure") {
    auto r = algebra_R<Rational>(kQ);
    auto t = build_paper_tilting(r);
    CHECK(t.summands.size() == 10);

    // T_2 has the canonical nonzero differential
    const Complex<Rational>& t2 = t.summands[1];
    CHECK(t2.lo == 0);
    CHECK(t2.hi == 1);
    CHECK(!t2.diff(0).is_zero());

    // T_9 is concentrated in degree 1
    const Complex<Rational>& t9 = t.summands[8];
    CHECK(t9.lo == 1);
    CHECK(t9.hi == 1);

    // T_1 is P_1 in degree 0
    CHECK(t.summands[0].lo == 0);
    CHECK(t.summands[0].hi == 0);

    auto wrong = algebra_S<Rational>(kQ);
    CHECK_THROWS_AS(build_paper_tilting(wrong), std::invalid_argument);
}

TEST_CASE("self-orthogonality of the paper complex") {
    auto r = algebra_R<Rational>(kQ);
    auto t = build_paper_tilting(r);
    auto table = verify_self_orthogonal(t, -3, 3);
    CHECK(table.pass);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            for (int l = -3; l <= 3; ++l)
                if (l != 0) CHECK(table.dim_at(i, j, l) == 0);

    // the displayed square: Hom(T_8, T_9) is nonzero in degree 0
    CHECK(table.dim_at(7, 8, 0) >= 1);

    // degree-0 table matches the path-count table of S
    auto s = algebra_S<Rational>(kQ);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            CHECK(table.dim_at(i, j, 0) == s.dim_between(i, j));
}

TEST_CASE("regular candidate is trivially self-orthogonal") {
    auto r = algebra_R<Rational>(kQ);
    auto reg = regular_candidate(r);
    auto table = verify_self_orthogonal(reg, -2, 2);
    CHECK(table.pass);
}

TEST_CASE("shifted copies fail self-orthogonality") {
    auto r = algebra_R<Rational>(kQ);
    auto bad = shifted_projective_candidate(r, {{0, 0}, {0, 1}});
    auto table = verify_self_orthogonal(bad, -2, 2);
    CHECK(!table.pass);
    bool nonzero_at_one = table.dim_at(0, 1, 1) > 0 || table.dim_at(1, 0, 1) > 0;
    bool nonzero_at_minus = table.dim_at(0, 1, -1) > 0 || table.dim_at(1, 0, -1) > 0;
    CHECK(nonzero_at_one);
    CHECK(nonzero_at_minus);
}

TEST_CASE("generation witnesses of the paper complex") {
    auto r = algebra_R<Rational>(kQ);
    auto t = build_paper_tilting(r);
    auto results = verify_generation(t);
    REQUIRE(results.size() == 10);
    for (const auto& w : results) CHECK(w.status == "certified");

    // the regular candidate has trivial witnesses
    auto reg = regular_candidate(r);
    for (const auto& w : verify_generation(reg)) CHECK(w.status == "certified");
}

TEST_CASE("missing witnesses are reported, and the cone oracle agrees") {
    auto r = algebra_R<Fp>(kF2);
    TiltingCandidate<Fp> only_p1;
    only_p1.algebra = &r;
    only_p1.summands.push_back(single_complex(projective(r, 0), 0));
    only_p1.names.push_back("P_1");
    only_p1.witnesses.resize(10);
    only_p1.witnesses[0] = {TiltingCandidate<Fp>::Witness::Kind::Shift, 0, -1, 0};

    auto results = verify_generation(only_p1);
    CHECK(results[0].status == "certified");
    for (int v = 1; v < 10; ++v) CHECK(results[v].status == "not certified");

    // exhaustive bounded cone search never reaches P_2
    auto sigs = reachable_homology_signatures(only_p1, 3, 24);
    CHECK(!sigs.count(module_signature(projective(r, 1))));
    CHECK(sigs.count(module_signature(projective(r, 0))));
}

TEST_CASE("End(T) over Q") {
    auto r = algebra_R<Rational>(kQ);
    auto t = build_paper_tilting(r);
    auto endt = endomorphism_algebra(t);  // verifies associativity, idempotents
    CHECK(endt.table.dim() == 53);

    auto pres = quiver_presentation(endt.table);
    CHECK(pres.radical_method == "trace form");
    CHECK(pres.surjective);
    CHECK(pres.kernel_dim == 0);
    CHECK(pres.min_relation_generators == 0);
    CHECK(pres.relation_pairs.empty());

    auto builtin = builtin_quivers();
    auto iso = graph_isomorphism(pres.quiver, builtin.e);
    CHECK(iso.has_value());

    auto s = algebra_S<Rational>(kQ);
    auto gmap = paper_generator_map(r, t, endt, s);
    CHECK(match_presentation(endt.table, s, gmap));
}

TEST_CASE("End of the regular module is the algebra itself") {
    auto r = algebra_R<Rational>(kQ);
    auto reg = regular_candidate(r);
    auto end_reg = endomorphism_algebra(reg);
    CHECK(end_reg.table.dim() == r.dim());
    auto gmap = regular_generator_map(r, reg, end_reg);
    CHECK(match_presentation(end_reg.table, r, gmap));

    auto s = algebra_S<Rational>(kQ);
    auto reg_s = regular_candidate(s);
    auto end_s = endomorphism_algebra(reg_s);
    CHECK(end_s.table.dim() == s.dim());
    CHECK(match_presentation(end_s.table, s,
                             regular_generator_map(s, reg_s, end_s)));
}

TEST_CASE("quiver presentations of R and S") {
    auto r = algebra_R<Rational>(kQ);
    auto pres_r = quiver_presentation(to_table(r));
    auto builtin = builtin_quivers();
    CHECK(graph_isomorphism(pres_r.quiver, builtin.a10).has_value());
    CHECK(pres_r.surjective);
    CHECK(pres_r.kernel_dim == 2);               // paths 1->9 and 1->10 die
    CHECK(pres_r.min_relation_generators == 1);  // one relation generates
    CHECK(pres_r.relation_pairs.size() == 2);

    auto s = algebra_S<Rational>(kQ);
    auto pres_s = quiver_presentation(to_table(s));
    CHECK(graph_isomorphism(pres_s.quiver, builtin.e).has_value());
    CHECK(pres_s.kernel_dim == 0);
    CHECK(pres_s.min_relation_generators == 0);

    // presentation mismatch certifies R and S are not isomorphic
    CHECK(!graph_isomorphism(pres_r.quiver, pres_s.quiver).has_value());

    // and no generator map can work: dimension/product checks fail
    GeneratorMap<Rational> silly;
    auto rt = to_table(r);
    for (int v = 0; v < 10; ++v) silly.idempotent_images.push_back(rt.idempotents[v]);
    for (int a = 0; a < 9; ++a)
        silly.arrow_images.push_back(Vec<Rational>::Zero(rt.dim()));
    CHECK(!match_presentation(rt, s, silly));
}

TEST_CASE("match_presentation on the identity map") {
    auto r = algebra_R<Rational>(kQ);
    auto rt = to_table(r);
    GeneratorMap<Rational> idmap;
    for (int v = 0; v < 10; ++v) idmap.idempotent_images.push_back(rt.idempotents[v]);
    const Quiver& q = r.quiver();
    for (int a = 0; a < q.num_arrows(); ++a) {
        Path ap{q.arrow(a).source, q.arrow(a).target, {a}};
        idmap.arrow_images.push_back(r.path_element(ap));
    }
    CHECK(match_presentation(rt, r, idmap));

    GeneratorMap<Rational> incomplete;
    CHECK_THROWS_AS(match_presentation(rt, r, incomplete), std::invalid_argument);
}

TEST_CASE("small-characteristic radical fallback") {
    // over F_2 the trace form degenerates (some dim P_i are even), the
    // nilpotent-ideal search takes over and is certified
    auto r = algebra_R<Fp>(kF2);
    auto pres = quiver_presentation(to_table(r));
    CHECK(pres.radical_method == "nilpotent-ideal search");
    auto builtin = builtin_quivers();
    CHECK(graph_isomorphism(pres.quiver, builtin.a10).has_value());
    CHECK(pres.kernel_dim == 2);
    CHECK(pres.min_relation_generators == 1);

    // over F_101 the trace form stays valid (101 > 53)
    auto r101 = algebra_R<Fp>(kF101);
    auto pres101 = quiver_presentation(to_table(r101));
    CHECK(pres101.radical_method == "trace form");
    CHECK(pres101.kernel_dim == 2);
}

TEST_CASE("corrupted differential breaks the tilting verification") {
    auto r = algebra_R<Rational>(kQ);
    auto t = build_paper_tilting(r);
    // zero out the differential of T_2; the complex degenerates to
    // P_1 ⊕ P_2[-1] and shifts of the identity show up away from degree 0
    t.summands[1].diffs[0] =
        zero_map(t.summands[1].object(0), t.summands[1].object(1));
    auto table = verify_self_orthogonal(t, -3, 3);
    CHECK(!table.pass);
}

TEST_CASE("End(T) over F_101 matches as well") {
    auto r = algebra_R<Fp>(kF101);
    auto t = build_paper_tilting(r);
    auto endt = endomorphism_algebra(t);
    CHECK(endt.table.dim() == 53);
    auto s = algebra_S<Fp>(kF101);
    CHECK(match_presentation(endt.table, s, paper_generator_map(r, t, endt, s)));
}
