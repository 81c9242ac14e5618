#include "doctest.h"

#include <stdexcept>

#include "qpa/complexes.hpp"
#include "test_util.hpp"

using namespace qpa;

namespace {
const FieldSpec kQ = FieldSpec::Q();
const FieldSpec kF5 = FieldSpec::F(5);

template <class K>
Complex<K> random_complex(const BasicAlgebra<K>& alg, std::mt19937_64& rng,
                          int terms = 3) {
    // random modules with differentials sampled from the kernel of the
    // "compose with previous" constraint, so d∘d = 0 by construction
    std::vector<Representation<K>> objs;
    for (int i = 0; i < terms; ++i) objs.push_back(random_module(alg, rng, 2));
    Complex<K> c = zero_complex(alg);
    c.lo = 0;
    c.hi = terms - 1;
    c.objects = objs;
    const FieldSpec& fs = alg.field();
    ModuleMap<K> prev;
    for (int i = 0; i + 1 < terms; ++i) {
        HomSpace<K> h = hom(objs[i], objs[i + 1]);
        Mat<K> constraint;
        if (i > 0) {
            // columns: vectorized h.basis[b] ∘ prev
            std::vector<Vec<K>> cols;
            Index rows = 0;
            for (Index b = 0; b < h.dim(); ++b) {
                ModuleMap<K> comp = compose_maps(h.basis[b], prev);
                Index sz = 0;
                for (const auto& m : comp.comps) sz += m.size();
                Vec<K> flat(sz);
                Index at = 0;
                for (const auto& m : comp.comps) {
                    Vec<K> part = vectorize(m);
                    flat.segment(at, part.size()) = part;
                    at += part.size();
                }
                cols.push_back(flat);
                rows = sz;
            }
            constraint = Mat<K>::Zero(rows, h.dim());
            for (Index b = 0; b < h.dim(); ++b) constraint.col(b) = cols[b];
        } else {
            constraint = Mat<K>::Zero(0, h.dim());
        }
        Mat<K> ker = kernel_basis(constraint);
        Vec<K> coeff = Vec<K>::Zero(h.dim());
        if (ker.cols() > 0) {
            Vec<K> pick(ker.cols());
            for (Index t = 0; t < ker.cols(); ++t) {
                std::int64_t r = fs.is_rationals()
                                     ? static_cast<std::int64_t>(rng() % 5) - 2
                                     : static_cast<std::int64_t>(rng() % fs.p);
                pick(t) = FieldOps<K>::from_int(fs, r);
            }
            coeff = ker * pick;
        }
        ModuleMap<K> d = hom_combo(h, coeff);
        c.diffs.push_back(d);
        prev = d;
    }
    check_complex(c);
    return c;
}
}  // namespace

TEST_CASE("homology of a single-module complex") {
    auto r = algebra_R<Rational>(kQ);
    auto m = projective(r, 4);
    auto c = single_complex(m, 0);
    CHECK(homology(c, 0).rep.dims == m.dims);
    CHECK(homology_dim(c, 1) == 0);
    CHECK(homology_dim(c, -1) == 0);
}

TEST_CASE("homology of two-term complexes") {
    auto r = algebra_R<Rational>(kQ);
    auto f = canonical_map(r, 0, 1);  // P_1 -> P_2, injective
    auto t2 = two_term_complex(f, 0);
    check_complex(t2);
    CHECK(homology_dim(t2, 0) == 0);
    auto h1 = homology(t2, 1);
    auto coker = cokernel_of(f);
    CHECK(h1.rep.dims == coker.rep.dims);

    // acyclic two-term complex: identity differential
    auto acyclic = two_term_complex(identity_map(projective(r, 5)), 0);
    for (int n = -1; n <= 2; ++n) CHECK(homology_dim(acyclic, n) == 0);
}

TEST_CASE("shift") {
    auto s = algebra_S<Rational>(kQ);
    std::mt19937_64 rng(31);
    auto c = random_complex(s, rng);
    auto same = shift(c, 0);
    CHECK(same.lo == c.lo);
    auto back = shift(shift(c, 1), -1);
    CHECK(back.lo == c.lo);
    for (int n = c.lo; n < c.hi; ++n)
        for (std::size_t v = 0; v < c.diff(n).comps.size(); ++v) {
            CHECK(mat_eq<Rational>(back.diff(n).comps[v], c.diff(n).comps[v]));
            CHECK(mat_eq<Rational>(same.diff(n).comps[v], c.diff(n).comps[v]));
        }
    for (int l : {-2, 1, 3})
        for (int n = -4; n <= 6; ++n)
            CHECK(homology_dim(shift(c, l), n) == homology_dim(c, n + l));
}

TEST_CASE("hom complex") {
    auto r = algebra_R<Rational>(kQ);
    auto m = projective(r, 2);
    auto n = projective(r, 5);
    auto hc = hom_complex(single_complex(m, 0), single_complex(n, 0));
    CHECK(hc.lo == 0);
    CHECK(hc.hi == 0);
    CHECK(hc.dim_at(0) == hom(m, n).dim());

    // delta^2 = 0 on random complexes; degree dims match the block sum
    std::mt19937_64 rng(17);
    for (int t = 0; t < 4; ++t) {
        auto c = random_complex(r, rng);
        auto d = random_complex(r, rng);
        auto h = hom_complex(c, d);
        for (int k = h.lo; k + 1 < h.hi; ++k) {
            Mat<Rational> dd = h.delta(k + 1) * h.delta(k);
            CHECK(is_zero_mat(dd));
        }
        for (int k = h.lo; k <= h.hi; ++k) {
            Index expect = 0;
            for (int i = c.lo; i <= c.hi; ++i)
                if (k + i >= d.lo && k + i <= d.hi)
                    expect += hom(c.object(i), d.object(i + k)).dim();
            CHECK(h.dim_at(k) == expect);
        }
    }
}

TEST_CASE("homotopy hom") {
    auto r = algebra_R<Rational>(kQ);
    auto m = projective(r, 2);
    auto n = projective(r, 6);
    // single modules in degree 0: Hom_K = Hom
    CHECK(homotopy_hom_dim(single_complex(m, 0), single_complex(n, 0), 0) ==
          hom(m, n).dim());

    // identity class is nonzero in Hom_K(c, c)
    std::mt19937_64 rng(23);
    auto c = random_complex(r, rng);
    auto hh = homotopy_hom(c, c, 0);
    bool has_nonzero_identity_class = false;
    if (hh.dim() > 0) {
        Vec<Rational> cls = hh.coords_of_cycle(identity_chain_map(c));
        for (Index i = 0; i < cls.size(); ++i)
            if (!(cls(i) == Rational(0))) has_nonzero_identity_class = true;
    }
    CHECK(has_nonzero_identity_class);

    // boundedness: far shifts vanish
    auto d = random_complex(r, rng);
    for (int l : {-9, -7, 7, 9}) CHECK(homotopy_hom_dim(c, d, l) == 0);

    // coboundaries are the zero class
    auto data = hom_complex(c, d);
    if (data.lo <= -1 && data.hi >= 0 && data.dim_at(-1) > 0) {
        Mat<Rational> db = data.delta(-1);
        Vec<Rational> one = Vec<Rational>::Zero(data.dim_at(-1));
        one(0) = Rational(1);
        Vec<Rational> boundary = db * one;
        auto classes = homotopy_hom(c, d, 0);
        if (classes.dim() > 0) {
            ChainMap<Rational> f = decode_degree_l_map(
                c, classes.shifted_target, data, 0, Vec<Rational>(boundary));
            Vec<Rational> cls = classes.coords_of_cycle(f);
            CHECK(is_zero_mat<Rational>(Mat<Rational>(cls)));
        }
    }
}

TEST_CASE("cone") {
    auto r = algebra_R<Rational>(kQ);
    std::mt19937_64 rng(41);
    auto c = random_complex(r, rng);

    // cone(identity) is acyclic
    auto id_cone = cone(identity_chain_map(c));
    for (int n = id_cone.cone.lo - 1; n <= id_cone.cone.hi + 1; ++n)
        CHECK(homology_dim(id_cone.cone, n) == 0);

    // cone(0 : C -> D) = C[1] ⊕ D
    auto d = random_complex(r, rng);
    auto z_cone = cone(zero_chain_map(c, d));
    auto c1 = shift(c, 1);
    for (int n = z_cone.cone.lo; n <= z_cone.cone.hi; ++n)
        CHECK(homology_dim(z_cone.cone, n) ==
              homology_dim(c1, n) + homology_dim(d, n));

    // composite D -> cone -> C[1] vanishes (hence is null-homotopic)
    auto f = canonical_map(r, 0, 3);
    auto cn = cone(chain_map_of_module_map(f, 0));
    CHECK(compose_chain_maps(cn.project_source, cn.include_target).is_zero());
}

TEST_CASE("cone long exact sequence has exact joints") {
    auto s = algebra_S<Rational>(kQ);
    std::mt19937_64 rng(43);
    auto c = random_complex(s, rng, 2);
    auto d = random_complex(s, rng, 2);
    auto h = hom_complex(c, d);
    if (h.lo <= 0 && h.hi >= 0) {
        Mat<Rational> cocycles = kernel_basis(h.delta(0));
        if (cocycles.cols() > 0) {
            ChainMap<Rational> f = decode_degree_l_map(
                c, d, h, 0, Vec<Rational>(cocycles.col(0)));
            f.target = d;
            REQUIRE(f.is_valid());
            auto cn = cone(f);
            for (int n = cn.cone.lo; n <= cn.cone.hi; ++n) {
                auto hd = homology(d, n);
                auto hcone = homology(cn.cone, n);
                auto mats_in =
                    induced_on_homology(cn.include_target, n, hd, hcone);
                auto hshift = homology(shift(c, 1), n);
                auto mats_out =
                    induced_on_homology(cn.project_source, n, hcone, hshift);
                Index rank_in = 0, rank_out = 0, dim_mid = 0;
                for (std::size_t v = 0; v < mats_in.size(); ++v) {
                    rank_in += rank(mats_in[v]);
                    rank_out += rank(mats_out[v]);
                    dim_mid += hcone.rep.dims[v];
                }
                CHECK(rank_in + rank_out == dim_mid);  // im = ker at the joint
            }
        }
    }
}

TEST_CASE("truncation") {
    auto r = algebra_R<Rational>(kQ);
    // complex with two homologies: zero differential P_1 -> P_2
    auto c = two_term_complex(zero_map(projective(r, 0), projective(r, 1)), 0);
    auto t = truncate(c, 0);
    CHECK(homology(t.below, 0).rep.dims == projective(r, 0).dims);
    CHECK(homology_dim(t.below, 1) == 0);
    CHECK(homology_dim(t.above, 0) == 0);
    CHECK(homology(t.above, 1).rep.dims == projective(r, 1).dims);

    for (int n = c.lo; n <= c.hi; ++n)
        CHECK(t.below.object(n).total_dim() + t.above.object(n).total_dim() ==
              c.object(n).total_dim());
    CHECK(compose_chain_maps(t.project, t.include).is_zero());

    auto all = truncate(c, 5);
    CHECK(all.below.hi == c.hi);
    CHECK(all.above.is_zero());

    std::mt19937_64 rng(53);
    auto x = random_complex(r, rng);
    auto tx = truncate(x, 1);
    for (int n = x.lo - 1; n <= x.hi + 1; ++n) {
        Index expect = n <= 1 ? homology_dim(x, n) : 0;
        CHECK(homology_dim(tx.below, n) == expect);
        Index expect_above = n > 1 ? homology_dim(x, n) : 0;
        CHECK(homology_dim(tx.above, n) == expect_above);
    }
}

TEST_CASE("quasi-isomorphisms") {
    auto r = algebra_R<Rational>(kQ);
    std::mt19937_64 rng(61);
    auto c = random_complex(r, rng);
    CHECK(is_quasi_iso(identity_chain_map(c)));

    auto acyclic = two_term_complex(identity_map(projective(r, 3)), 0);
    CHECK(is_quasi_iso(zero_chain_map(acyclic, zero_complex(r))));

    auto res = resolution_complex(simple(r, 8));
    CHECK(res.complete);
    CHECK(is_quasi_iso(res.augmentation));
}

TEST_CASE("projective replacement") {
    auto r = algebra_R<Rational>(kQ);
    std::mt19937_64 rng(71);
    for (int t = 0; t < 3; ++t) {
        auto c = random_complex(r, rng, 2);
        auto rep = projective_replacement(c);
        for (int n = rep.proj.lo; n <= rep.proj.hi; ++n)
            CHECK(is_projective_module(rep.proj.object(n)));
        CHECK(rep.to_c.is_valid());
        CHECK(is_quasi_iso(rep.to_c));
    }
    auto m = simple(r, 8);
    auto rep = projective_replacement(single_complex(m, 0));
    CHECK(rep.proj.hi == 0);
    CHECK(rep.proj.lo == -2);  // pd(S_9) = 2
}

TEST_CASE("splits_into_homology over hereditary S") {
    auto s = algebra_S<Rational>(kQ);
    std::mt19937_64 rng(81);
    for (int t = 0; t < 6; ++t) {
        auto c = random_complex(s, rng, 3);
        auto report = splits_into_homology(c);
        CHECK(report.splits);
        CHECK(report.witness_checked);
    }
}

TEST_CASE("single nonzero homology always splits") {
    auto r = algebra_R<Rational>(kQ);
    auto res = resolution_complex(simple(r, 8));
    auto report = splits_into_homology(res.complex);
    CHECK(report.splits);
}

TEST_CASE("ext^2 witness over R does not split") {
    auto r = algebra_R<Rational>(kQ);
    CHECK(ext_dim(simple(r, 8), simple(r, 0), 2) == 1);

    // projective resolution of S_9 shifted to degrees [0, 2]
    auto res = resolution_complex(simple(r, 8));
    auto q = shift(res.complex, -2);
    REQUIRE(q.lo == 0);
    REQUIRE(q.hi == 2);

    // chain map Q -> S_1[0]: a nonzero phi : Q^0 = P_1 -> S_1; its class
    // generates Ext^2 and is nonzero because Hom(P_8, S_1) = 0
    auto s1 = simple(r, 0);
    auto target = single_complex(s1, 0);
    auto h0 = hom(q.object(0), s1);
    REQUIRE(h0.dim() == 1);
    ChainMap<Rational> g = zero_chain_map(q, target);
    g.comps[0] = h0.basis[0];
    REQUIRE(g.is_valid());

    auto cn = cone(g);
    // collapse the acyclic bottom to present it as a two-term complex
    ModuleMap<Rational> d_bottom = cn.cone.diff(-1);
    REQUIRE(d_bottom.is_injective());
    auto quot = cokernel_of(d_bottom);
    ModuleMap<Rational> induced = factor_through(quot, cn.cone.diff(0));
    auto w = two_term_complex(induced, 0);
    check_complex(w);

    CHECK(homology(w, 0).rep.dims == s1.dims);
    CHECK(homology(w, 1).rep.dims == simple(r, 8).dims);

    auto report = splits_into_homology(w);
    CHECK(!report.splits);
    CHECK(!report.reason.empty());

    auto report2 = splits_into_homology(cn.cone);
    CHECK(!report2.splits);
}

TEST_CASE("splits_into_homology over F_5") {
    auto s = algebra_S<Fp>(kF5);
    std::mt19937_64 rng(91);
    for (int t = 0; t < 4; ++t) {
        auto c = random_complex(s, rng, 3);
        CHECK(splits_into_homology(c).splits);
    }
}
