#pragma once

#include <map>
#include <string>
#include <vector>

#include "qpa/modrep.hpp"

namespace qpa {

/// Bounded cochain complex of representations. Degrees run over [lo, hi];
/// an empty range (hi < lo) is the zero complex. diffs[n-lo] : C^n → C^{n+1}.
///
/// Sign conventions used throughout (fixed here, nowhere else):
///   • shift negates differentials: d_{C[l]} = (-1)^l d_C
///   • hom-complex differential: δ(f) = d_D∘f − (−1)^deg(f) f∘d_C
///   • cone differential: [[−d_C, 0], [f, d_D]]
template <class K>
struct Complex {
    const BasicAlgebra<K>* algebra = nullptr;
    int lo = 0;
    int hi = -1;
    std::vector<Representation<K>> objects;
    std::vector<ModuleMap<K>> diffs;

    bool in_range(int n) const { return n >= lo && n <= hi; }

    Representation<K> object(int n) const {
        if (in_range(n)) return objects[n - lo];
        return zero_representation(*algebra);
    }

    ModuleMap<K> diff(int n) const {
        if (n >= lo && n < hi) return diffs[n - lo];
        return zero_map(object(n), object(n + 1));
    }

    bool is_zero() const {
        for (const auto& o : objects)
            if (!o.is_zero()) return false;
        return true;
    }

    int span() const { return hi >= lo ? hi - lo : 0; }
};

template <class K>
void check_complex(const Complex<K>& c) {
    for (int n = c.lo; n < c.hi; ++n) {
        if (!c.diff(n).is_valid())
            throw std::invalid_argument("complex: differential is not a module map");
        if (n + 1 < c.hi &&
            !compose_maps(c.diff(n + 1), c.diff(n)).is_zero())
            throw std::invalid_argument("complex: d∘d != 0");
    }
}

template <class K>
Complex<K> zero_complex(const BasicAlgebra<K>& alg) {
    Complex<K> c;
    c.algebra = &alg;
    return c;
}

template <class K>
Complex<K> single_complex(const Representation<K>& m, int degree = 0) {
    Complex<K> c;
    c.algebra = m.algebra;
    c.lo = c.hi = degree;
    c.objects.push_back(m);
    return c;
}

/// Two-term complex (A →f B) with A in `degree`, B in degree+1.
template <class K>
Complex<K> two_term_complex(const ModuleMap<K>& f, int degree = 0) {
    Complex<K> c;
    c.algebra = f.source.algebra;
    c.lo = degree;
    c.hi = degree + 1;
    c.objects = {f.source, f.target};
    c.diffs = {f};
    return c;
}

/// Drop zero objects at both ends (degree bookkeeping only).
template <class K>
Complex<K> trim(const Complex<K>& c) {
    int lo = c.lo, hi = c.hi;
    while (lo <= hi && c.object(lo).is_zero()) ++lo;
    while (hi >= lo && c.object(hi).is_zero()) --hi;
    Complex<K> out = zero_complex(*c.algebra);
    if (lo > hi) return out;
    out.lo = lo;
    out.hi = hi;
    for (int n = lo; n <= hi; ++n) out.objects.push_back(c.object(n));
    for (int n = lo; n < hi; ++n) out.diffs.push_back(c.diff(n));
    return out;
}

/// C[l]^n = C^{n+l}, with differentials negated l times.
template <class K>
Complex<K> shift(const Complex<K>& c, int l) {
    Complex<K> out = zero_complex(*c.algebra);
    if (c.hi < c.lo) return out;
    out.lo = c.lo - l;
    out.hi = c.hi - l;
    for (int n = out.lo; n <= out.hi; ++n) out.objects.push_back(c.object(n + l));
    for (int n = out.lo; n < out.hi; ++n) {
        ModuleMap<K> d = c.diff(n + l);
        if (l % 2 != 0) d = negate_map(d);
        out.diffs.push_back(d);
    }
    return out;
}

template <class K>
struct ChainMap {
    Complex<K> source, target;
    std::vector<ModuleMap<K>> comps;  // comps[n - source.lo] : C^n → D^n

    ModuleMap<K> comp(int n) const {
        if (n >= source.lo && n <= source.hi &&
            n - source.lo < static_cast<int>(comps.size()))
            return comps[n - source.lo];
        return zero_map(source.object(n), target.object(n));
    }

    bool is_zero() const {
        for (const auto& f : comps)
            if (!f.is_zero()) return false;
        return true;
    }

    bool is_valid() const {
        int lo = std::min(source.lo, target.lo);
        int hi = std::max(source.hi, target.hi);
        for (int n = lo; n <= hi; ++n) {
            if (!comp(n).is_valid()) return false;
            ModuleMap<K> lhs = compose_maps(comp(n + 1), source.diff(n));
            ModuleMap<K> rhs = compose_maps(target.diff(n), comp(n));
            for (std::size_t v = 0; v < lhs.comps.size(); ++v)
                if (!mat_eq<K>(lhs.comps[v], rhs.comps[v])) return false;
        }
        return true;
    }
};

/// A module map as a chain map between single-degree complexes.
template <class K>
ChainMap<K> chain_map_of_module_map(const ModuleMap<K>& f, int degree = 0) {
    ChainMap<K> out;
    out.source = single_complex(f.source, degree);
    out.target = single_complex(f.target, degree);
    out.comps.push_back(f);
    return out;
}

template <class K>
ChainMap<K> zero_chain_map(const Complex<K>& c, const Complex<K>& d) {
    ChainMap<K> f;
    f.source = c;
    f.target = d;
    for (int n = c.lo; n <= c.hi; ++n)
        f.comps.push_back(zero_map(c.object(n), d.object(n)));
    return f;
}

template <class K>
ChainMap<K> identity_chain_map(const Complex<K>& c) {
    ChainMap<K> f;
    f.source = c;
    f.target = c;
    for (int n = c.lo; n <= c.hi; ++n) f.comps.push_back(identity_map(c.object(n)));
    return f;
}

template <class K>
ChainMap<K> compose_chain_maps(const ChainMap<K>& g, const ChainMap<K>& f) {
    ChainMap<K> h;
    h.source = f.source;
    h.target = g.target;
    for (int n = f.source.lo; n <= f.source.hi; ++n)
        h.comps.push_back(compose_maps(g.comp(n), f.comp(n)));
    return h;
}

/// Shift a chain map: f[l] : C[l] → D[l].
template <class K>
ChainMap<K> shift_chain_map(const ChainMap<K>& f, int l) {
    ChainMap<K> out;
    out.source = shift(f.source, l);
    out.target = shift(f.target, l);
    for (int n = out.source.lo; n <= out.source.hi; ++n)
        out.comps.push_back(f.comp(n + l));
    return out;
}

// ---------------------------------------------------------------------------
// homology

template <class K>
struct HomologyData {
    Representation<K> rep;
    std::vector<Subquotient<K>> coords;  // per vertex, ambient = C^n_v

    /// Class of per-vertex ambient column vectors (must lie in ker d).
    Mat<K> class_at(int v, const Mat<K>& vectors) const {
        return coords[v].class_of(vectors);
    }
};

/// H^n(C) = ker d^n / im d^{n-1}, with an induced representation structure
/// and canonical coordinates for mapping cocycles to classes.
template <class K>
HomologyData<K> homology(const Complex<K>& c, int n) {
    const BasicAlgebra<K>& alg = *c.algebra;
    const Quiver& q = alg.quiver();
    Representation<K> obj = c.object(n);
    ModuleMap<K> dout = c.diff(n);
    ModuleMap<K> din = c.diff(n - 1);

    HomologyData<K> h;
    h.rep.algebra = &alg;
    for (int v = 0; v < q.num_vertices(); ++v) {
        Mat<K> cocycles = kernel_basis(dout.comps[v]);
        h.coords.push_back(subquotient(cocycles, Mat<K>(din.comps[v])));
        h.rep.dims.push_back(h.coords.back().dim());
    }
    for (int a = 0; a < q.num_arrows(); ++a) {
        int u = q.arrow(a).source, w = q.arrow(a).target;
        Mat<K> moved = obj.action[a] * h.coords[w].lift;
        h.rep.action.push_back(h.coords[u].class_of(moved));
    }
    return h;
}

template <class K>
Index homology_dim(const Complex<K>& c, int n) {
    return homology(c, n).rep.total_dim();
}

/// Matrix data of H^n(f) : per-vertex matrices between homology reps.
template <class K>
std::vector<Mat<K>> induced_on_homology(const ChainMap<K>& f, int n,
                                        const HomologyData<K>& hsrc,
                                        const HomologyData<K>& htgt) {
    std::vector<Mat<K>> out;
    ModuleMap<K> fn = f.comp(n);
    for (std::size_t v = 0; v < fn.comps.size(); ++v) {
        Mat<K> moved = fn.comps[v] * hsrc.coords[v].lift;
        out.push_back(htgt.class_at(static_cast<int>(v), moved));
    }
    return out;
}

template <class K>
bool is_quasi_iso(const ChainMap<K>& f) {
    if (!f.is_valid()) throw std::invalid_argument("is_quasi_iso: not a chain map");
    int lo = std::min(f.source.lo, f.target.lo) - 1;
    int hi = std::max(f.source.hi, f.target.hi) + 1;
    for (int n = lo; n <= hi; ++n) {
        HomologyData<K> hs = homology(f.source, n);
        HomologyData<K> ht = homology(f.target, n);
        if (hs.rep.dims != ht.rep.dims) return false;
        auto mats = induced_on_homology(f, n, hs, ht);
        for (const auto& m : mats) {
            if (m.rows() != m.cols()) return false;
            if (!is_invertible(m)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// hom complex and homotopy classes

/// Complex of plain vector spaces Hom^n = ⊕_i Hom(C^i, D^{i+n}) with
/// δ(f) = d_D∘f − (−1)^n f∘d_C. Blocks keep their module-map bases so that
/// coordinates decode back to maps.
template <class K>
struct HomComplex {
    int lo = 0, hi = -1;
    std::vector<std::vector<std::pair<int, HomSpace<K>>>> blocks;  // per degree
    std::vector<Index> dims;
    std::vector<Mat<K>> deltas;  // deltas[n-lo] : Hom^n → Hom^(n+1)

    Index dim_at(int n) const {
        if (n < lo || n > hi) return 0;
        return dims[n - lo];
    }
    Mat<K> delta(int n) const {
        if (n >= lo && n < hi) return deltas[n - lo];
        return Mat<K>::Zero(dim_at(n + 1), dim_at(n));
    }
};

template <class K>
HomComplex<K> hom_complex(const Complex<K>& c, const Complex<K>& d) {
    if (c.algebra != d.algebra)
        throw std::invalid_argument("hom_complex: different algebras");
    HomComplex<K> out;
    if (c.hi < c.lo || d.hi < d.lo) return out;
    out.lo = d.lo - c.hi;
    out.hi = d.hi - c.lo;
    for (int n = out.lo; n <= out.hi; ++n) {
        std::vector<std::pair<int, HomSpace<K>>> blocks;
        Index dim = 0;
        for (int i = c.lo; i <= c.hi; ++i) {
            int j = i + n;
            if (j < d.lo || j > d.hi) continue;
            HomSpace<K> h = hom(c.object(i), d.object(j));
            dim += h.dim();
            blocks.push_back({i, std::move(h)});
        }
        out.blocks.push_back(std::move(blocks));
        out.dims.push_back(dim);
    }
    for (int n = out.lo; n < out.hi; ++n) {
        const auto& src = out.blocks[n - out.lo];
        const auto& tgt = out.blocks[n + 1 - out.lo];
        Mat<K> delta = Mat<K>::Zero(out.dims[n + 1 - out.lo], out.dims[n - out.lo]);
        auto row_offset = [&](int i) {
            Index at = 0;
            for (const auto& [bi, h] : tgt) {
                if (bi == i) return std::optional<Index>(at);
                at += h.dim();
            }
            return std::optional<Index>();
        };
        auto tgt_space = [&](int i) -> const HomSpace<K>* {
            for (const auto& [bi, h] : tgt)
                if (bi == i) return &h;
            return nullptr;
        };
        Index col = 0;
        K sign = (n % 2 == 0) ? K(-1) : K(1);  // −(−1)^n
        for (const auto& [i, h] : src) {
            for (Index b = 0; b < h.dim(); ++b, ++col) {
                const ModuleMap<K>& f = h.basis[b];
                // component d_D ∘ f in block (i, n+1)
                if (const HomSpace<K>* hs = tgt_space(i)) {
                    ModuleMap<K> g = compose_maps(d.diff(i + n), f);
                    delta.block(*row_offset(i), col, hs->dim(), 1) =
                        hom_coords(*hs, g);
                }
                // component −(−1)^n f ∘ d_C in block (i-1, n+1)
                if (const HomSpace<K>* hs = tgt_space(i - 1)) {
                    ModuleMap<K> g =
                        scale_map(sign, compose_maps(f, c.diff(i - 1)));
                    delta.block(*row_offset(i - 1), col, hs->dim(), 1) =
                        hom_coords(*hs, g);
                }
            }
        }
        out.deltas.push_back(std::move(delta));
    }
    return out;
}

/// Hom_K(c, d[l]): chain maps c → d[l] modulo homotopy, as the degree-l
/// cohomology of the hom complex. Basis classes are realized by honest chain
/// maps into shift(d, l).
template <class K>
struct HomotopyClasses {
    Complex<K> source, shifted_target;
    int l = 0;
    HomComplex<K> data;
    Subquotient<K> classes;  // in the degree-l coordinate space
    std::vector<ChainMap<K>> basis;

    Index dim() const { return static_cast<Index>(basis.size()); }

    Vec<K> coords_of_cycle(const ChainMap<K>& f) const {
        // encode components in the block bases, then take the class
        Index total = data.dim_at(l);
        Vec<K> enc = Vec<K>::Zero(total);
        Index at = 0;
        for (const auto& [i, h] : data.blocks[l - data.lo]) {
            ModuleMap<K> fi = f.comp(i);
            enc.segment(at, h.dim()) = hom_coords(h, fi);
            at += h.dim();
        }
        Mat<K> cls = classes.class_of(Mat<K>(enc));
        return Vec<K>(cls.col(0));
    }
};

template <class K>
ChainMap<K> decode_degree_l_map(const Complex<K>& c, const Complex<K>& dl,
                                const HomComplex<K>& data, int l,
                                const Vec<K>& coeffs) {
    ChainMap<K> f = zero_chain_map(c, dl);
    Index at = 0;
    for (const auto& [i, h] : data.blocks[l - data.lo]) {
        Vec<K> part = coeffs.segment(at, h.dim());
        at += h.dim();
        ModuleMap<K> fi = hom_combo(h, part);
        if (c.in_range(i)) f.comps[i - c.lo] = fi;
    }
    return f;
}

template <class K>
HomotopyClasses<K> homotopy_hom(const Complex<K>& c, const Complex<K>& d,
                                int l) {
    HomotopyClasses<K> out;
    out.source = c;
    out.shifted_target = shift(d, l);
    out.l = l;
    out.data = hom_complex(c, d);
    if (l < out.data.lo || l > out.data.hi) {
        out.classes = Subquotient<K>{Mat<K>(0, 0), Mat<K>(0, 0), 0};
        return out;
    }
    Mat<K> cocycles = kernel_basis(out.data.delta(l));
    Mat<K> boundaries = out.data.delta(l - 1);
    out.classes = subquotient(cocycles, boundaries);
    for (Index b = 0; b < out.classes.dim(); ++b) {
        Vec<K> coeffs = out.classes.lift.col(b);
        ChainMap<K> f =
            decode_degree_l_map(c, out.shifted_target, out.data, l, coeffs);
        out.basis.push_back(std::move(f));
    }
    return out;
}

template <class K>
Index homotopy_hom_dim(const Complex<K>& c, const Complex<K>& d, int l) {
    return homotopy_hom(c, d, l).dim();
}

// ---------------------------------------------------------------------------
// cones and truncation

template <class K>
struct ConeData {
    Complex<K> cone;
    ChainMap<K> include_target;   // D → cone
    ChainMap<K> project_source;   // cone → C[1]
};

/// cone(f)^n = C^{n+1} ⊕ D^n with differential [[−d_C, 0], [f, d_D]].
template <class K>
ConeData<K> cone(const ChainMap<K>& f) {
    if (!f.is_valid()) throw std::invalid_argument("cone: not a chain map");
    const Complex<K>& c = f.source;
    const Complex<K>& d = f.target;
    const BasicAlgebra<K>& alg = *c.algebra;
    ConeData<K> out;
    out.cone = zero_complex(alg);
    int lo = std::min(c.lo - 1, d.lo);
    int hi = std::max(c.hi - 1, d.hi);
    if (hi < lo) {
        out.include_target = zero_chain_map(d, out.cone);
        out.project_source = zero_chain_map(out.cone, shift(c, 1));
        return out;
    }
    out.cone.lo = lo;
    out.cone.hi = hi;
    std::vector<DirectSum<K>> sums;
    for (int n = lo; n <= hi; ++n) {
        sums.push_back(direct_sum(alg, {c.object(n + 1), d.object(n)}));
        out.cone.objects.push_back(sums.back().rep);
    }
    for (int n = lo; n < hi; ++n) {
        const DirectSum<K>& from = sums[n - lo];
        const DirectSum<K>& to = sums[n + 1 - lo];
        ModuleMap<K> dd = zero_map(from.rep, to.rep);
        auto put = [&](const ModuleMap<K>& part, int which_to, int which_from) {
            dd = add_maps(dd, compose_maps(to.inclusions[which_to],
                                           compose_maps(part,
                                                        from.projections[which_from])));
        };
        put(negate_map(c.diff(n + 1)), 0, 0);
        put(f.comp(n + 1), 1, 0);
        put(d.diff(n), 1, 1);
        out.cone.diffs.push_back(std::move(dd));
    }
    // D → cone
    out.include_target.source = d;
    out.include_target.target = out.cone;
    for (int n = d.lo; n <= d.hi; ++n) {
        if (n >= lo && n <= hi)
            out.include_target.comps.push_back(
                compose_maps(sums[n - lo].inclusions[1],
                             identity_map(d.object(n))));
        else
            out.include_target.comps.push_back(
                zero_map(d.object(n), out.cone.object(n)));
    }
    // cone → C[1]
    Complex<K> c1 = shift(c, 1);
    out.project_source.source = out.cone;
    out.project_source.target = c1;
    for (int n = lo; n <= hi; ++n)
        out.project_source.comps.push_back(sums[n - lo].projections[0]);
    check_complex(out.cone);
    return out;
}

template <class K>
struct Truncation {
    Complex<K> below;   // τ≤n: homology of c in degrees ≤ n
    Complex<K> above;   // c / τ≤n
    ChainMap<K> include;  // below → c
    ChainMap<K> project;  // c → above
};

/// Smart truncation at n: below has H^i(c) for i ≤ n and zero above; the
/// triple is a degreewise short exact sequence 0 → below → c → above → 0.
template <class K>
Truncation<K> truncate(const Complex<K>& c, int n) {
    const BasicAlgebra<K>& alg = *c.algebra;
    Truncation<K> out;
    out.below = zero_complex(alg);
    out.above = zero_complex(alg);
    if (c.hi < c.lo || n >= c.hi) {
        out.below = c;
        out.include = identity_chain_map(c);
        out.project = zero_chain_map(c, out.above);
        return out;
    }
    if (n < c.lo) {
        out.above = c;
        out.include = zero_chain_map(out.below, c);
        out.project = identity_chain_map(c);
        return out;
    }
    SubData<K> z = kernel_of(c.diff(n));  // Z^n ⊆ C^n

    out.below.lo = c.lo;
    out.below.hi = n;
    for (int i = c.lo; i < n; ++i) out.below.objects.push_back(c.object(i));
    out.below.objects.push_back(z.rep);
    for (int i = c.lo; i < n; ++i) {
        if (i + 1 < n) {
            out.below.diffs.push_back(c.diff(i));
        } else {
            // corestrict d^{n-1} through Z^n
            ModuleMap<K> d = c.diff(n - 1);
            ModuleMap<K> co;
            co.source = d.source;
            co.target = z.rep;
            for (std::size_t v = 0; v < d.comps.size(); ++v) {
                auto coords = try_solve(z.inclusion.comps[v], Mat<K>(d.comps[v]));
                if (!coords) throw std::logic_error("truncate: d does not land in Z");
                co.comps.push_back(*coords);
            }
            out.below.diffs.push_back(std::move(co));
        }
    }

    out.include.source = out.below;
    out.include.target = c;
    for (int i = c.lo; i < n; ++i)
        out.include.comps.push_back(identity_map(c.object(i)));
    out.include.comps.push_back(z.inclusion);

    // quotient complex
    std::vector<Mat<K>> spans;
    for (std::size_t v = 0; v < z.inclusion.comps.size(); ++v)
        spans.push_back(Mat<K>(z.inclusion.comps[v]));
    QuotData<K> qn = quotient_by(c.object(n), spans);
    out.above.lo = n;
    out.above.hi = c.hi;
    out.above.objects.push_back(qn.rep);
    for (int i = n + 1; i <= c.hi; ++i) out.above.objects.push_back(c.object(i));
    for (int i = n; i < c.hi; ++i) {
        if (i == n) {
            // induced map Q^n → C^{n+1}: factor d^n through the projection
            ModuleMap<K> d = c.diff(n);
            ModuleMap<K> ind;
            ind.source = qn.rep;
            ind.target = c.object(n + 1);
            for (std::size_t v = 0; v < d.comps.size(); ++v) {
                auto sol = try_solve(Mat<K>(qn.projection.comps[v].transpose()),
                                     Mat<K>(d.comps[v].transpose()));
                if (!sol) throw std::logic_error("truncate: induced map failed");
                ind.comps.push_back(Mat<K>(sol->transpose()));
            }
            out.above.diffs.push_back(std::move(ind));
        } else {
            out.above.diffs.push_back(c.diff(i));
        }
    }

    out.project.source = c;
    out.project.target = out.above;
    out.project.comps.push_back(qn.projection);
    for (int i = n + 1; i <= c.hi; ++i)
        out.project.comps.push_back(identity_map(c.object(i)));
    check_complex(out.below);
    check_complex(out.above);
    return out;
}

// ---------------------------------------------------------------------------
// projective replacement (staircase construction)

template <class K>
struct Replacement {
    Complex<K> proj;     // bounded complex of projectives
    ChainMap<K> to_c;    // quasi-isomorphism proj → c
};

/// Bounded complex of projectives quasi-isomorphic to c, built top-down:
/// at each degree cover the pullback of d_C and the restriction of the map
/// already built to the cocycles one degree up. Minimal covers keep it small;
/// finite global dimension makes it terminate below c.lo.
template <class K>
Replacement<K> projective_replacement(const Complex<K>& c) {
    const BasicAlgebra<K>& alg = *c.algebra;
    Replacement<K> out;
    out.proj = zero_complex(alg);
    if (c.hi < c.lo || c.is_zero()) {
        out.to_c = zero_chain_map(out.proj, c);
        return out;
    }

    std::vector<Representation<K>> terms;   // downward from degree hi
    std::vector<ModuleMap<K>> dps;          // dps[k] : P^{hi-k} → P^{hi-k+1}
    std::vector<ModuleMap<K>> pis;          // pis[k] : P^{hi-k} → C^{hi-k}

    Representation<K> p_above = zero_representation(alg);
    ModuleMap<K> d_above = zero_map(p_above, p_above);  // d_P^{n+1}
    ModuleMap<K> pi_above = zero_map(p_above, c.object(c.hi + 1));

    int guard = c.hi - c.lo + static_cast<int>(alg.dim()) + 4;
    int n = c.hi;
    while (true) {
        if (c.hi - n > guard)
            throw std::logic_error("projective_replacement: no termination");
        // Z = ker(d_P^{n+1}), with π restricted to it
        SubData<K> z = kernel_of(d_above);
        ModuleMap<K> pi_z = compose_maps(pi_above, z.inclusion);
        // X = pullback of d_C^n : C^n → C^{n+1} and π|_Z : Z → C^{n+1}
        DirectSum<K> ds = direct_sum(alg, {c.object(n), z.rep});
        ModuleMap<K> g = add_maps(
            compose_maps(c.diff(n), ds.projections[0]),
            negate_map(compose_maps(pi_z, ds.projections[1])));
        SubData<K> x = kernel_of(g);
        if (x.rep.is_zero() && n < c.lo) break;

        Representation<K> pn;
        ModuleMap<K> pi_n, d_n;
        if (x.rep.is_zero()) {
            pn = zero_representation(alg);
            pi_n = zero_map(pn, c.object(n));
            d_n = zero_map(pn, p_above);
        } else {
            Cover<K> cov = projective_cover(x.rep);
            pn = cov.proj;
            ModuleMap<K> into_ds = compose_maps(x.inclusion, cov.onto);
            pi_n = compose_maps(ds.projections[0], into_ds);
            d_n = compose_maps(z.inclusion,
                               compose_maps(ds.projections[1], into_ds));
        }
        terms.push_back(pn);
        dps.push_back(d_n);
        pis.push_back(pi_n);
        p_above = pn;
        d_above = d_n;
        pi_above = pi_n;
        --n;
    }

    int built = static_cast<int>(terms.size());
    if (built == 0) {
        out.to_c = zero_chain_map(out.proj, c);
        return out;
    }
    out.proj.lo = c.hi - built + 1;
    out.proj.hi = c.hi;
    for (int k = built - 1; k >= 0; --k) out.proj.objects.push_back(terms[k]);
    for (int k = built - 1; k >= 1; --k) out.proj.diffs.push_back(dps[k]);
    out.to_c.source = out.proj;
    out.to_c.target = c;
    for (int k = built - 1; k >= 0; --k) out.to_c.comps.push_back(pis[k]);

    out.proj = trim(out.proj);
    // re-align the chain map to the trimmed range
    ChainMap<K> aligned;
    aligned.source = out.proj;
    aligned.target = c;
    for (int m = out.proj.lo; m <= out.proj.hi; ++m) {
        int k = c.hi - m;
        aligned.comps.push_back(k >= 0 && k < built
                                    ? pis[k]
                                    : zero_map(out.proj.object(m), c.object(m)));
    }
    out.to_c = std::move(aligned);

    check_complex(out.proj);
    if (!out.to_c.is_valid())
        throw std::logic_error("projective_replacement: not a chain map");
    if (!is_quasi_iso(out.to_c))
        throw std::logic_error("projective_replacement: not a quasi-isomorphism");
    return out;
}

/// Resolution of a module as a complex in degrees [-len, 0], plus the
/// augmentation quasi-isomorphism onto M in degree 0.
template <class K>
struct ResolutionComplex {
    Complex<K> complex;
    ChainMap<K> augmentation;
    bool complete = true;
};

template <class K>
ResolutionComplex<K> resolution_complex(const Representation<K>& m,
                                        int max_len = -1) {
    Resolution<K> res = projective_resolution(m, max_len);
    ResolutionComplex<K> out;
    out.complete = res.complete;
    out.complex = zero_complex(*m.algebra);
    int len = res.length();
    out.complex.lo = -len;
    out.complex.hi = 0;
    for (int k = len; k >= 0; --k) out.complex.objects.push_back(res.terms[k]);
    for (int k = len; k >= 1; --k) out.complex.diffs.push_back(res.maps[k]);
    out.augmentation.source = out.complex;
    out.augmentation.target = single_complex(m, 0);
    for (int k = len; k >= 1; --k)
        out.augmentation.comps.push_back(
            zero_map(res.terms[k], zero_representation(*m.algebra)));
    out.augmentation.comps.push_back(res.maps[0]);
    return out;
}

// ---------------------------------------------------------------------------
// hereditary splitting

template <class K>
struct SplitsReport {
    bool splits = false;
    std::string reason;           // degree of the first certified obstruction
    Complex<K> homology_sum;      // ⊕_i H^i(c) placed in degree i
    ChainMap<K> witness;          // quasi-iso replacement → homology_sum
    bool witness_checked = false;
};

/// Decides whether c ≅ ⊕_i H^i(c)[-i] in the derived category, by solving,
/// degree by degree, for a chain map from a projective replacement to the
/// homology sum inducing the identity on homology. The solve is exact: an
/// inconsistent system certifies that no quasi-isomorphism exists.
template <class K>
SplitsReport<K> splits_into_homology(const Complex<K>& c) {
    const BasicAlgebra<K>& alg = *c.algebra;
    const Quiver& q = alg.quiver();
    SplitsReport<K> out;

    Replacement<K> rep = projective_replacement(c);
    const Complex<K>& p = rep.proj;

    // homology target complex D with D^i = H^i(c), zero differentials
    out.homology_sum = zero_complex(alg);
    if (p.hi < p.lo) {  // acyclic c
        out.splits = true;
        out.witness = zero_chain_map(p, out.homology_sum);
        out.witness_checked = true;
        return out;
    }
    std::vector<HomologyData<K>> hc, hp;
    out.homology_sum.lo = p.lo;
    out.homology_sum.hi = p.hi;
    for (int i = p.lo; i <= p.hi; ++i) {
        hc.push_back(homology(c, i));
        hp.push_back(homology(p, i));
        out.homology_sum.objects.push_back(hc.back().rep);
    }
    for (int i = p.lo; i < p.hi; ++i)
        out.homology_sum.diffs.push_back(zero_map(out.homology_sum.object(i),
                                                  out.homology_sum.object(i + 1)));

    ChainMap<K> witness;
    witness.source = p;
    witness.target = out.homology_sum;
    for (int i = p.lo; i <= p.hi; ++i) {
        const HomologyData<K>& Hc = hc[i - p.lo];
        const HomologyData<K>& Hp = hp[i - p.lo];
        // iso u : H^i(P) → H^i(c) induced by the replacement map
        auto u = induced_on_homology(rep.to_c, i, Hp, Hc);

        // solve for g : P^i → H^i(c) (module map) with g∘d = 0 and
        // g∘(homology lifts) = u
        const Representation<K>& src = p.object(i);
        const Representation<K>& tgt = Hc.rep;
        int nv = q.num_vertices();
        std::vector<Index> offset(nv + 1, 0);
        for (int v = 0; v < nv; ++v)
            offset[v + 1] = offset[v] + tgt.dims[v] * src.dims[v];
        Index unknowns = offset[nv];

        std::vector<Mat<K>> lhs_blocks;
        std::vector<Vec<K>> rhs_blocks;
        auto add_rows = [&](Index rows) {
            lhs_blocks.push_back(Mat<K>::Zero(rows, unknowns));
            rhs_blocks.push_back(Vec<K>::Zero(rows));
            return lhs_blocks.size() - 1;
        };
        // (a) module-map commutation
        for (int a = 0; a < q.num_arrows(); ++a) {
            int uu = q.arrow(a).source, w = q.arrow(a).target;
            Index rows = tgt.dims[uu] * src.dims[w];
            if (rows == 0) continue;
            auto b = add_rows(rows);
            lhs_blocks[b].block(0, offset[uu], rows, tgt.dims[uu] * src.dims[uu]) +=
                kron(Mat<K>(src.action[a].transpose()),
                     Mat<K>(Mat<K>::Identity(tgt.dims[uu], tgt.dims[uu])));
            lhs_blocks[b].block(0, offset[w], rows, tgt.dims[w] * src.dims[w]) -=
                kron(Mat<K>(Mat<K>::Identity(src.dims[w], src.dims[w])),
                     tgt.action[a]);
        }
        // (b) g ∘ d_P^{i-1} = 0
        ModuleMap<K> din = p.diff(i - 1);
        for (int v = 0; v < nv; ++v) {
            Index rows = tgt.dims[v] * din.source.dims[v];
            if (rows == 0) continue;
            auto b = add_rows(rows);
            lhs_blocks[b].block(0, offset[v], rows, tgt.dims[v] * src.dims[v]) =
                kron(Mat<K>(din.comps[v].transpose()),
                     Mat<K>(Mat<K>::Identity(tgt.dims[v], tgt.dims[v])));
        }
        // (c) g on the chosen cocycle lifts equals u
        for (int v = 0; v < nv; ++v) {
            const Mat<K>& lift = Hp.coords[v].lift;  // src.dims[v] × h
            Index rows = tgt.dims[v] * lift.cols();
            if (rows == 0) continue;
            auto b = add_rows(rows);
            lhs_blocks[b].block(0, offset[v], rows, tgt.dims[v] * src.dims[v]) =
                kron(Mat<K>(lift.transpose()),
                     Mat<K>(Mat<K>::Identity(tgt.dims[v], tgt.dims[v])));
            rhs_blocks[b] = vectorize(u[v]);
        }
        Index total_rows = 0;
        for (const auto& bl : lhs_blocks) total_rows += bl.rows();
        Mat<K> sys = Mat<K>::Zero(total_rows, unknowns);
        Mat<K> rhs = Mat<K>::Zero(total_rows, 1);
        Index at = 0;
        for (std::size_t b = 0; b < lhs_blocks.size(); ++b) {
            sys.block(at, 0, lhs_blocks[b].rows(), unknowns) = lhs_blocks[b];
            rhs.block(at, 0, rhs_blocks[b].rows(), 1) = rhs_blocks[b];
            at += lhs_blocks[b].rows();
        }
        auto sol = try_solve(sys, rhs);
        if (!sol) {
            out.splits = false;
            out.reason = "no chain map induces an isomorphism in degree " +
                         std::to_string(i) + " (linear system inconsistent)";
            return out;
        }
        ModuleMap<K> g;
        g.source = src;
        g.target = tgt;
        for (int v = 0; v < nv; ++v)
            g.comps.push_back(unvectorize(
                Vec<K>(sol->block(offset[v], 0, offset[v + 1] - offset[v], 1)),
                tgt.dims[v], src.dims[v]));
        witness.comps.push_back(std::move(g));
    }
    if (!witness.is_valid())
        throw std::logic_error("splits_into_homology: witness is not a chain map");
    if (!is_quasi_iso(witness))
        throw std::logic_error("splits_into_homology: witness not a quasi-iso");
    out.splits = true;
    out.witness = std::move(witness);
    out.witness_checked = true;
    return out;
}

}  // namespace qpa
