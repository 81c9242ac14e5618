#include "doctest.h"

#include <stdexcept>

#include "qpa/algebra.hpp"
#include "test_util.hpp"

using namespace qpa;

namespace {
const FieldSpec kQ = FieldSpec::Q();
const FieldSpec kF101 = FieldSpec::F(101);
}  // namespace

TEST_CASE("path algebra of A_10") {
    auto b = builtin_quivers();
    auto a = path_algebra<Rational>(b.a10, kQ);
    CHECK(a.dim() == 55);  // matches the lower-triangular 10x10 matrix algebra
    CHECK(a.is_hereditary());

    // ten orthogonal idempotents summing to 1, each corner 1-dimensional
    auto t = to_table(a);
    CHECK(t.idempotents_complete());
    for (int v = 0; v < 10; ++v) CHECK(a.dim_between(v, v) == 1);

    // product of non-composable basis paths is zero
    Path a1{0, 1, {0}};
    Path a2{1, 2, {1}};
    Vec<Rational> x = a.basis_element(a.basis_index(a1));
    Vec<Rational> y = a.basis_element(a.basis_index(a2));
    CHECK(is_zero_mat<Rational>(Mat<Rational>(a.multiply(x, y))));  // a1.a2 = 0
    CHECK(!is_zero_mat<Rational>(Mat<Rational>(a.multiply(y, x))));

    CHECK(mat_eq<Rational>(Mat<Rational>(a.multiply(y, x)),
                           Mat<Rational>(a.path_element(*compose(b.a10, a2, a1)))));
}

TEST_CASE("R = kA_10 / (a8...a1)") {
    auto r = algebra_R<Rational>(kQ);
    CHECK(r.dim() == 53);  // 55 paths minus the two hit by the relation

    const Quiver& q = r.quiver();
    int v1 = q.vertex_index("1"), v8 = q.vertex_index("8"),
        v9 = q.vertex_index("9"), v10 = q.vertex_index("10");
    CHECK(r.dim_between(v1, v9) == 0);
    CHECK(r.dim_between(v1, v10) == 0);
    CHECK(r.dim_between(v1, v8) == 1);
    CHECK(r.dim_between(v9, v1) == 0);  // acyclic: no backward paths

    // the long path 1 -> 10 contains the relation, so it reduces to 0
    Path longest{0, 9, {0, 1, 2, 3, 4, 5, 6, 7, 8}};
    CHECK(is_zero_mat<Rational>(Mat<Rational>(r.path_element(longest))));

    // e_1 . e_1 = e_1
    auto e1 = r.idempotent(0);
    CHECK(mat_eq<Rational>(Mat<Rational>(r.multiply(e1, e1)),
                           Mat<Rational>(e1)));

    // e_j . p . e_i = p for p in basis_between(i, j)
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            for (Index t : r.basis_between(i, j)) {
                auto p = r.basis_element(t);
                auto lhs = r.multiply(r.idempotent(j),
                                      r.multiply(p, r.idempotent(i)));
                CHECK(mat_eq<Rational>(Mat<Rational>(lhs), Mat<Rational>(p)));
            }
}

TEST_CASE("S = kE") {
    auto s = algebra_S<Rational>(kQ);
    CHECK(s.dim() == 53);
    CHECK(s.is_hereditary());
    Index total = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) total += s.dim_between(i, j);
    CHECK(total == s.dim());
}

TEST_CASE("dimension splits over vertex pairs") {
    auto r = algebra_R<Rational>(kQ);
    Index total = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) total += r.dim_between(i, j);
    CHECK(total == r.dim());
}

TEST_CASE("quotient by the empty list is the identity") {
    auto b = builtin_quivers();
    auto a = path_algebra<Rational>(b.a10, kQ);
    auto a2 = quotient(a, {});
    CHECK(a2.dim() == a.dim());
    for (Index i = 0; i < a.dim(); ++i)
        CHECK(a.basis_path(i) == a2.basis_path(i));
}

TEST_CASE("associativity, exhaustively on basis pairs") {
    auto r = algebra_R<Fp>(kF101);
    CHECK(to_table(r).is_associative());
    auto s = algebra_S<Fp>(kF101);
    CHECK(to_table(s).is_associative());

    // small case over Q as well
    auto a4 = path_algebra<Rational>(linear_quiver(4), kQ);
    CHECK(to_table(a4).is_associative());
    CHECK(to_table(a4).idempotents_complete());
}

TEST_CASE("hereditary algebras: quotient with no relations equals path algebra") {
    auto b = builtin_quivers();
    auto s = algebra_S<Rational>(kQ);
    auto ks = path_algebra<Rational>(b.e, kQ);
    CHECK(s.dim() == ks.dim());
    for (Index i = 0; i < s.dim(); ++i)
        CHECK(s.basis_path(i) == ks.basis_path(i));
}

TEST_CASE("admissibility is enforced") {
    auto b = builtin_quivers();
    Relation<Rational> bad;
    Path a1{0, 1, {0}};
    bad.terms.push_back({Rational(1), a1});  // length 1: not allowed
    CHECK_THROWS_AS(BasicAlgebra<Rational>(b.a10, kQ, {bad}),
                    std::invalid_argument);

    Relation<Rational> empty;
    CHECK_THROWS_AS(BasicAlgebra<Rational>(b.a10, kQ, {empty}),
                    std::invalid_argument);

    // non-parallel terms
    Relation<Rational> skew;
    skew.terms.push_back({Rational(1), Path{0, 2, {0, 1}}});
    skew.terms.push_back({Rational(1), Path{1, 3, {1, 2}}});
    CHECK_THROWS_AS(BasicAlgebra<Rational>(b.a10, kQ, {skew}),
                    std::invalid_argument);
}

TEST_CASE("non-confluent relation sets are rejected") {
    Quiver q;
    for (int i = 1; i <= 4; ++i) q.add_vertex(std::to_string(i));
    q.add_arrow("d", "1", "2");
    q.add_arrow("a", "1", "2");
    q.add_arrow("e", "2", "3");
    q.add_arrow("b", "2", "3");
    q.add_arrow("f", "3", "4");
    q.add_arrow("g", "3", "4");
    int d = *q.find_arrow("d"), a = *q.find_arrow("a"), e = *q.find_arrow("e"),
        b = *q.find_arrow("b"), f = *q.find_arrow("f"), g = *q.find_arrow("g");

    Relation<Rational> r1;  // e.d - b.a
    r1.terms.push_back({Rational(1), Path{0, 2, {d, e}}});
    r1.terms.push_back({Rational(-1), Path{0, 2, {a, b}}});
    Relation<Rational> r2;  // f.e - g.b
    r2.terms.push_back({Rational(1), Path{1, 3, {e, f}}});
    r2.terms.push_back({Rational(-1), Path{1, 3, {b, g}}});

    CHECK_THROWS_AS(BasicAlgebra<Rational>(q, kQ, {r1, r2}),
                    std::invalid_argument);

    // each relation alone is fine
    CHECK_NOTHROW(BasicAlgebra<Rational>(q, kQ, {r1}));
    CHECK_NOTHROW(BasicAlgebra<Rational>(q, kQ, {r2}));
}

TEST_CASE("non-monomial rewriting reduces products") {
    Quiver q;
    for (int i = 1; i <= 3; ++i) q.add_vertex(std::to_string(i));
    q.add_arrow("a", "1", "2");
    q.add_arrow("b", "1", "2");
    q.add_arrow("c", "2", "3");
    int a = *q.find_arrow("a"), b = *q.find_arrow("b"), c = *q.find_arrow("c");

    Relation<Rational> rel;  // c.b = c.a
    rel.terms.push_back({Rational(1), Path{0, 2, {b, c}}});
    rel.terms.push_back({Rational(-1), Path{0, 2, {a, c}}});
    BasicAlgebra<Rational> alg(q, kQ, {rel});
    CHECK(alg.dim() == 7);  // 8 paths, one identified

    auto cb = alg.path_element(Path{0, 2, {b, c}});
    auto ca = alg.path_element(Path{0, 2, {a, c}});
    CHECK(mat_eq<Rational>(Mat<Rational>(cb), Mat<Rational>(ca)));
}

TEST_CASE("element rendering") {
    auto r = algebra_R<Rational>(kQ);
    CHECK(r.element_string(r.zero_element()) == "0");
    CHECK(r.element_string(r.idempotent(0)) == "e_1");
}
