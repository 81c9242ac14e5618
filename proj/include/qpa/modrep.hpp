#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qpa/algebra.hpp"
#include "qpa/fppoly.hpp"
#include "qpa/linalg.hpp"

namespace qpa {

/// Right module over a BasicAlgebra, stored as a quiver representation:
/// one space per vertex (M_v = M·e_v) and, per arrow a: u → v, the matrix of
/// the right action of a, which is a map M_v → M_u. With this orientation
/// Hom(P_i, M) ≅ M_i for P_i = e_i·A (the Yoneda test in the suite pins it).
template <class K>
struct Representation {
    const BasicAlgebra<K>* algebra = nullptr;
    std::vector<Index> dims;      // per vertex
    std::vector<Mat<K>> action;   // per arrow a: dims[s(a)] × dims[t(a)]

    Index dim_at(int v) const { return dims[v]; }
    Index total_dim() const {
        Index t = 0;
        for (Index d : dims) t += d;
        return t;
    }
    bool is_zero() const { return total_dim() == 0; }

    std::string dim_vector_string() const {
        std::string s = "(";
        for (std::size_t v = 0; v < dims.size(); ++v) {
            if (v) s += ",";
            s += std::to_string(dims[v]);
        }
        return s + ")";
    }
};

template <class K>
bool same_dims(const Representation<K>& a, const Representation<K>& b) {
    return a.algebra == b.algebra && a.dims == b.dims;
}

template <class K>
bool rep_eq(const Representation<K>& a, const Representation<K>& b) {
    if (!same_dims(a, b)) return false;
    for (std::size_t i = 0; i < a.action.size(); ++i)
        if (!mat_eq(a.action[i], b.action[i])) return false;
    return true;
}

/// Matrix of the right action of a path: M_{target(p)} → M_{source(p)}.
template <class K>
Mat<K> path_action(const Representation<K>& m, const Path& p) {
    Mat<K> acc = Mat<K>::Identity(m.dims[p.source], m.dims[p.source]);
    // traversal order: action(b1) · action(b2) · ... · action(br)
    for (int a : p.arrows) acc = acc * m.action[a];
    return acc;
}

/// Throws unless shapes match and every relation acts by zero.
template <class K>
void check_representation(const Representation<K>& m) {
    const BasicAlgebra<K>& alg = *m.algebra;
    const Quiver& q = alg.quiver();
    if (static_cast<int>(m.dims.size()) != q.num_vertices() ||
        static_cast<int>(m.action.size()) != q.num_arrows())
        throw std::invalid_argument("representation: wrong shape");
    for (int a = 0; a < q.num_arrows(); ++a) {
        if (m.action[a].rows() != m.dims[q.arrow(a).source] ||
            m.action[a].cols() != m.dims[q.arrow(a).target])
            throw std::invalid_argument(
                "representation: arrow matrix has the wrong shape (rows = dim "
                "at source, cols = dim at target)");
    }
    for (const auto& rel : alg.relations()) {
        int s = rel.terms.front().second.source;
        int t = rel.terms.front().second.target;
        Mat<K> acc = Mat<K>::Zero(m.dims[s], m.dims[t]);
        for (const auto& [c, p] : rel.terms) acc += c * path_action(m, p);
        if (!is_zero_mat(acc))
            throw std::invalid_argument(
                "representation: a relation does not act by zero");
    }
}

template <class K>
Representation<K> zero_representation(const BasicAlgebra<K>& alg) {
    Representation<K> m;
    m.algebra = &alg;
    m.dims.assign(alg.num_vertices(), 0);
    for (int a = 0; a < alg.quiver().num_arrows(); ++a)
        m.action.push_back(Mat<K>::Zero(0, 0));
    return m;
}

template <class K>
Representation<K> simple(const BasicAlgebra<K>& alg, int vertex) {
    Representation<K> m = zero_representation(alg);
    m.dims[vertex] = 1;
    const Quiver& q = alg.quiver();
    for (int a = 0; a < q.num_arrows(); ++a)
        m.action[a] =
            Mat<K>::Zero(m.dims[q.arrow(a).source], m.dims[q.arrow(a).target]);
    return m;
}

/// P_i = e_i·A: the vertex-v space has basis the normal-form paths v → i,
/// arrows act by right multiplication.
template <class K>
Representation<K> projective(const BasicAlgebra<K>& alg, int vertex) {
    const Quiver& q = alg.quiver();
    if (vertex < 0 || vertex >= q.num_vertices())
        throw std::invalid_argument("projective: unknown vertex");
    Representation<K> m;
    m.algebra = &alg;
    std::vector<std::vector<Index>> rows(q.num_vertices());
    for (int v = 0; v < q.num_vertices(); ++v) {
        rows[v] = alg.basis_between(v, vertex);
        m.dims.push_back(static_cast<Index>(rows[v].size()));
    }
    for (int a = 0; a < q.num_arrows(); ++a) {
        int u = q.arrow(a).source, w = q.arrow(a).target;
        Mat<K> mat = Mat<K>::Zero(m.dims[u], m.dims[w]);
        Path arrow_path{u, w, {a}};
        for (Index col = 0; col < m.dims[w]; ++col) {
            const Path& p = alg.basis_path(rows[w][col]);  // p : w -> i
            auto composed = compose(q, p, arrow_path);     // p∘a : u -> i
            Vec<K> elem = alg.path_element(*composed);
            for (Index r = 0; r < m.dims[u]; ++r) mat(r, col) = elem(rows[u][r]);
        }
        m.action.push_back(std::move(mat));
    }
    return m;
}

/// The regular right module A, vertex-v space = paths with source v.
template <class K>
Representation<K> regular_representation(const BasicAlgebra<K>& alg) {
    const Quiver& q = alg.quiver();
    Representation<K> m;
    m.algebra = &alg;
    std::vector<std::vector<Index>> rows(q.num_vertices());
    for (int v = 0; v < q.num_vertices(); ++v) {
        for (Index t = 0; t < alg.dim(); ++t)
            if (alg.basis_path(t).source == v) rows[v].push_back(t);
        m.dims.push_back(static_cast<Index>(rows[v].size()));
    }
    for (int a = 0; a < q.num_arrows(); ++a) {
        int u = q.arrow(a).source, w = q.arrow(a).target;
        Mat<K> mat = Mat<K>::Zero(m.dims[u], m.dims[w]);
        Path arrow_path{u, w, {a}};
        for (Index col = 0; col < m.dims[w]; ++col) {
            const Path& p = alg.basis_path(rows[w][col]);
            auto composed = compose(q, p, arrow_path);
            Vec<K> elem = alg.path_element(*composed);
            for (Index r = 0; r < m.dims[u]; ++r) mat(r, col) = elem(rows[u][r]);
        }
        m.action.push_back(std::move(mat));
    }
    return m;
}

template <class K>
struct ModuleMap {
    Representation<K> source, target;
    std::vector<Mat<K>> comps;  // per vertex: target.dims[v] × source.dims[v]

    bool is_zero() const {
        for (const auto& c : comps)
            if (!is_zero_mat(c)) return false;
        return true;
    }

    bool is_valid() const {
        const Quiver& q = source.algebra->quiver();
        if (source.algebra != target.algebra) return false;
        for (int a = 0; a < q.num_arrows(); ++a) {
            int u = q.arrow(a).source, w = q.arrow(a).target;
            if (!mat_eq<K>(Mat<K>(comps[u] * source.action[a]),
                           Mat<K>(target.action[a] * comps[w])))
                return false;
        }
        return true;
    }

    bool is_injective() const {
        for (std::size_t v = 0; v < comps.size(); ++v)
            if (rank(comps[v]) != source.dims[v]) return false;
        return true;
    }
    bool is_surjective() const {
        for (std::size_t v = 0; v < comps.size(); ++v)
            if (rank(comps[v]) != target.dims[v]) return false;
        return true;
    }
    bool is_iso() const {
        for (std::size_t v = 0; v < comps.size(); ++v) {
            if (comps[v].rows() != comps[v].cols()) return false;
            if (!is_invertible(comps[v])) return false;
        }
        return true;
    }
};

template <class K>
ModuleMap<K> zero_map(const Representation<K>& m, const Representation<K>& n) {
    ModuleMap<K> f;
    f.source = m;
    f.target = n;
    for (std::size_t v = 0; v < m.dims.size(); ++v)
        f.comps.push_back(Mat<K>::Zero(n.dims[v], m.dims[v]));
    return f;
}

template <class K>
ModuleMap<K> identity_map(const Representation<K>& m) {
    ModuleMap<K> f;
    f.source = m;
    f.target = m;
    for (std::size_t v = 0; v < m.dims.size(); ++v)
        f.comps.push_back(Mat<K>::Identity(m.dims[v], m.dims[v]));
    return f;
}

template <class K>
ModuleMap<K> compose_maps(const ModuleMap<K>& g, const ModuleMap<K>& f) {
    ModuleMap<K> h;
    h.source = f.source;
    h.target = g.target;
    for (std::size_t v = 0; v < f.comps.size(); ++v)
        h.comps.push_back(g.comps[v] * f.comps[v]);
    return h;
}

template <class K>
ModuleMap<K> add_maps(const ModuleMap<K>& f, const ModuleMap<K>& g) {
    ModuleMap<K> h = f;
    for (std::size_t v = 0; v < f.comps.size(); ++v) h.comps[v] += g.comps[v];
    return h;
}

template <class K>
ModuleMap<K> scale_map(const K& c, const ModuleMap<K>& f) {
    ModuleMap<K> h = f;
    for (auto& m : h.comps) m *= c;
    return h;
}

template <class K>
ModuleMap<K> negate_map(const ModuleMap<K>& f) {
    return scale_map(K(-1), f);
}

template <class K>
struct HomSpace {
    Representation<K> source, target;
    std::vector<ModuleMap<K>> basis;
    Index dim() const { return static_cast<Index>(basis.size()); }
};

/// All module maps M → N: the kernel of the linear system stating that every
/// arrow square commutes. The basis is canonical (kernel of an RREF).
template <class K>
HomSpace<K> hom(const Representation<K>& m, const Representation<K>& n) {
    if (m.algebra != n.algebra)
        throw std::invalid_argument("hom: modules over different algebras");
    const Quiver& q = m.algebra->quiver();
    int nv = q.num_vertices();
    std::vector<Index> offset(nv + 1, 0);
    for (int v = 0; v < nv; ++v)
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    Index unknowns = offset[nv];
    Index rows = 0;
    for (int a = 0; a < q.num_arrows(); ++a)
        rows += n.dims[q.arrow(a).source] * m.dims[q.arrow(a).target];

    Mat<K> sys = Mat<K>::Zero(rows, unknowns);
    Index r0 = 0;
    for (int a = 0; a < q.num_arrows(); ++a) {
        int u = q.arrow(a).source, w = q.arrow(a).target;
        const Mat<K>& am = m.action[a];  // m_u × m_w
        const Mat<K>& an = n.action[a];  // n_u × n_w
        Index block_rows = n.dims[u] * m.dims[w];
        if (block_rows == 0) continue;
        // vec(F_u · am) = (amᵀ ⊗ I_{n_u}) vec(F_u)
        Mat<K> lhs = kron(Mat<K>(am.transpose()),
                          Mat<K>(Mat<K>::Identity(n.dims[u], n.dims[u])));
        // vec(an · F_w) = (I_{m_w} ⊗ an) vec(F_w)
        Mat<K> rhs = kron(Mat<K>(Mat<K>::Identity(m.dims[w], m.dims[w])), an);
        sys.block(r0, offset[u], block_rows, n.dims[u] * m.dims[u]) += lhs;
        sys.block(r0, offset[w], block_rows, n.dims[w] * m.dims[w]) -= rhs;
        r0 += block_rows;
    }

    Mat<K> ker = kernel_basis(sys);
    HomSpace<K> out;
    out.source = m;
    out.target = n;
    for (Index c = 0; c < ker.cols(); ++c) {
        ModuleMap<K> f;
        f.source = m;
        f.target = n;
        for (int v = 0; v < nv; ++v) {
            Vec<K> part = ker.block(offset[v], c, offset[v + 1] - offset[v], 1);
            f.comps.push_back(unvectorize(part, n.dims[v], m.dims[v]));
        }
        out.basis.push_back(std::move(f));
    }
    return out;
}

/// Coordinates of a module map in the basis of a HomSpace.
template <class K>
Vec<K> hom_coords(const HomSpace<K>& h, const ModuleMap<K>& g) {
    Index total = 0;
    for (std::size_t v = 0; v < g.comps.size(); ++v) total += g.comps[v].size();
    Mat<K> basis_mat(total, h.dim());
    Vec<K> target(total);
    for (Index b = 0; b < h.dim(); ++b) {
        Index at = 0;
        for (std::size_t v = 0; v < g.comps.size(); ++v) {
            Vec<K> part = vectorize(h.basis[b].comps[v]);
            basis_mat.block(at, b, part.size(), 1) = part;
            at += part.size();
        }
    }
    Index at = 0;
    for (std::size_t v = 0; v < g.comps.size(); ++v) {
        Vec<K> part = vectorize(g.comps[v]);
        target.segment(at, part.size()) = part;
        at += part.size();
    }
    auto s = try_solve(basis_mat, Mat<K>(target));
    if (!s) throw std::logic_error("hom_coords: map is not in the span");
    return Vec<K>(s->col(0));
}

template <class K>
ModuleMap<K> hom_combo(const HomSpace<K>& h, const Vec<K>& coords) {
    ModuleMap<K> f = zero_map(h.source, h.target);
    for (Index b = 0; b < h.dim(); ++b)
        if (!(coords(b) == K(0))) f = add_maps(f, scale_map(coords(b), h.basis[b]));
    return f;
}

/// Left multiplication by x ∈ e_j·A·e_i as a module map P_i → P_j.
template <class K>
ModuleMap<K> left_mult_map(const BasicAlgebra<K>& alg, const Vec<K>& x, int i,
                           int j) {
    Representation<K> pi = projective(alg, i);
    Representation<K> pj = projective(alg, j);
    ModuleMap<K> f;
    f.source = pi;
    f.target = pj;
    const Quiver& q = alg.quiver();
    for (int v = 0; v < q.num_vertices(); ++v) {
        auto rows_i = alg.basis_between(v, i);
        auto rows_j = alg.basis_between(v, j);
        Mat<K> comp = Mat<K>::Zero(static_cast<Index>(rows_j.size()),
                                   static_cast<Index>(rows_i.size()));
        for (std::size_t c = 0; c < rows_i.size(); ++c) {
            Vec<K> prod = alg.multiply(x, alg.basis_element(rows_i[c]));
            for (std::size_t r = 0; r < rows_j.size(); ++r)
                comp(static_cast<Index>(r), static_cast<Index>(c)) =
                    prod(rows_j[r]);
        }
        f.comps.push_back(std::move(comp));
    }
    return f;
}

/// The map P_i → P_j induced by the unique path i → j of an A_n-type quiver;
/// zero precisely when the path dies in the quotient.
template <class K>
ModuleMap<K> canonical_map(const BasicAlgebra<K>& alg, int i, int j) {
    const Quiver& q = alg.quiver();
    // find the path i -> j in the quiver by DFS (unique in our examples)
    std::optional<Path> found;
    std::vector<int> stack;
    std::function<bool(int, Path&)> dfs = [&](int v, Path& p) {
        if (v == j) {
            found = p;
            return true;
        }
        for (int a = 0; a < q.num_arrows(); ++a) {
            if (q.arrow(a).source != v) continue;
            p.arrows.push_back(a);
            int save = p.target;
            p.target = q.arrow(a).target;
            if (dfs(q.arrow(a).target, p)) return true;
            p.target = save;
            p.arrows.pop_back();
        }
        return false;
    };
    Path p = lazy_path(i);
    if (!dfs(i, p)) throw std::invalid_argument("canonical_map: no path");
    return left_mult_map(alg, alg.path_element(*found), i, j);
}

// ---------------------------------------------------------------------------
// sub/quotient machinery

template <class K>
struct SubData {
    Representation<K> rep;
    ModuleMap<K> inclusion;  // rep → ambient
};

template <class K>
struct QuotData {
    Representation<K> rep;
    ModuleMap<K> projection;  // ambient → rep
};

/// Subrepresentation spanned by the given per-vertex columns. Throws when the
/// span is not closed under the arrow actions.
template <class K>
SubData<K> sub_from_lifts(const Representation<K>& m,
                          const std::vector<Mat<K>>& spans) {
    const Quiver& q = m.algebra->quiver();
    SubData<K> out;
    out.rep.algebra = m.algebra;
    std::vector<Mat<K>> lifts;
    for (std::size_t v = 0; v < m.dims.size(); ++v) {
        lifts.push_back(column_space_basis(spans[v]));
        out.rep.dims.push_back(lifts.back().cols());
    }
    for (int a = 0; a < q.num_arrows(); ++a) {
        int u = q.arrow(a).source, w = q.arrow(a).target;
        auto coords = try_solve(lifts[u], Mat<K>(m.action[a] * lifts[w]));
        if (!coords)
            throw std::invalid_argument("sub_from_lifts: not a subrepresentation");
        out.rep.action.push_back(*coords);
    }
    out.inclusion.source = out.rep;
    out.inclusion.target = m;
    out.inclusion.comps = lifts;
    return out;
}

template <class K>
SubData<K> kernel_of(const ModuleMap<K>& f) {
    std::vector<Mat<K>> lifts;
    for (std::size_t v = 0; v < f.comps.size(); ++v)
        lifts.push_back(kernel_basis(f.comps[v]));
    return sub_from_lifts(f.source, lifts);
}

template <class K>
SubData<K> image_of(const ModuleMap<K>& f) {
    std::vector<Mat<K>> lifts;
    for (std::size_t v = 0; v < f.comps.size(); ++v)
        lifts.push_back(Mat<K>(f.comps[v]));
    return sub_from_lifts(f.target, lifts);
}

/// Quotient of m by the subrepresentation spanned by the given columns.
/// The quotient basis is the canonical complement (unit coordinates chosen by
/// column pivoting), so quotients are deterministic.
template <class K>
QuotData<K> quotient_by(const Representation<K>& m,
                        const std::vector<Mat<K>>& spans) {
    const Quiver& q = m.algebra->quiver();
    QuotData<K> out;
    out.rep.algebra = m.algebra;
    std::vector<Mat<K>> proj, sect;
    for (std::size_t v = 0; v < m.dims.size(); ++v) {
        Mat<K> w = column_space_basis(spans[v]);
        Index amb = m.dims[v];
        auto r = rref(hstack<K>(w, Mat<K>::Identity(amb, amb)));
        std::vector<Index> chosen;
        for (Index c : r.pivot_cols)
            if (c >= w.cols()) chosen.push_back(c - w.cols());
        Mat<K> comp = Mat<K>::Zero(amb, static_cast<Index>(chosen.size()));
        for (std::size_t t = 0; t < chosen.size(); ++t)
            comp(chosen[t], static_cast<Index>(t)) = K(1);
        Mat<K> frame = hstack(w, comp);
        auto inv = try_inverse(frame);
        if (!inv) throw std::logic_error("quotient_by: frame not invertible");
        proj.push_back(inv->block(w.cols(), 0, comp.cols(), amb));
        sect.push_back(comp);
        out.rep.dims.push_back(comp.cols());
    }
    for (int a = 0; a < q.num_arrows(); ++a) {
        int u = q.arrow(a).source, w = q.arrow(a).target;
        out.rep.action.push_back(proj[u] * m.action[a] * sect[w]);
    }
    out.projection.source = m;
    out.projection.target = out.rep;
    out.projection.comps = proj;
    return out;
}

/// For f : M → Y vanishing on the subrepresentation defining q (a quotient of
/// M), the induced map q.rep → Y.
template <class K>
ModuleMap<K> factor_through(const QuotData<K>& q, const ModuleMap<K>& f) {
    ModuleMap<K> out;
    out.source = q.rep;
    out.target = f.target;
    for (std::size_t v = 0; v < f.comps.size(); ++v) {
        auto sol = try_solve(Mat<K>(q.projection.comps[v].transpose()),
                             Mat<K>(f.comps[v].transpose()));
        if (!sol)
            throw std::invalid_argument("factor_through: map does not vanish on the kernel");
        out.comps.push_back(Mat<K>(sol->transpose()));
    }
    return out;
}

template <class K>
QuotData<K> cokernel_of(const ModuleMap<K>& f) {
    std::vector<Mat<K>> spans;
    for (std::size_t v = 0; v < f.comps.size(); ++v)
        spans.push_back(Mat<K>(f.comps[v]));
    return quotient_by(f.target, spans);
}

/// rad M = M·J, J the arrow ideal: at vertex u, the sum of the images of the
/// actions of arrows starting at u.
template <class K>
std::vector<Mat<K>> radical_spans(const Representation<K>& m) {
    const Quiver& q = m.algebra->quiver();
    std::vector<Mat<K>> spans;
    for (int u = 0; u < q.num_vertices(); ++u) {
        Mat<K> acc(m.dims[u], 0);
        for (int a = 0; a < q.num_arrows(); ++a)
            if (q.arrow(a).source == u) acc = hstack<K>(acc, Mat<K>(m.action[a]));
        spans.push_back(acc);
    }
    return spans;
}

template <class K>
SubData<K> radical(const Representation<K>& m) {
    return sub_from_lifts(m, radical_spans(m));
}

template <class K>
QuotData<K> top(const Representation<K>& m) {
    return quotient_by(m, radical_spans(m));
}

template <class K>
struct DirectSum {
    Representation<K> rep;
    std::vector<ModuleMap<K>> inclusions;
    std::vector<ModuleMap<K>> projections;
};

template <class K>
DirectSum<K> direct_sum(const BasicAlgebra<K>& alg,
                        const std::vector<Representation<K>>& parts) {
    const Quiver& q = alg.quiver();
    DirectSum<K> out;
    out.rep.algebra = &alg;
    out.rep.dims.assign(q.num_vertices(), 0);
    for (const auto& p : parts)
        for (int v = 0; v < q.num_vertices(); ++v) out.rep.dims[v] += p.dims[v];
    for (int a = 0; a < q.num_arrows(); ++a) {
        int u = q.arrow(a).source, w = q.arrow(a).target;
        Mat<K> m = Mat<K>::Zero(out.rep.dims[u], out.rep.dims[w]);
        Index ro = 0, co = 0;
        for (const auto& p : parts) {
            m.block(ro, co, p.dims[u], p.dims[w]) = p.action[a];
            ro += p.dims[u];
            co += p.dims[w];
        }
        out.rep.action.push_back(std::move(m));
    }
    std::vector<Index> at(q.num_vertices(), 0);
    for (const auto& p : parts) {
        ModuleMap<K> inc, prj;
        inc.source = p;
        inc.target = out.rep;
        prj.source = out.rep;
        prj.target = p;
        for (int v = 0; v < q.num_vertices(); ++v) {
            Mat<K> i = Mat<K>::Zero(out.rep.dims[v], p.dims[v]);
            i.block(at[v], 0, p.dims[v], p.dims[v]) =
                Mat<K>::Identity(p.dims[v], p.dims[v]);
            inc.comps.push_back(i);
            prj.comps.push_back(i.transpose());
        }
        for (int v = 0; v < q.num_vertices(); ++v) at[v] += p.dims[v];
        out.inclusions.push_back(std::move(inc));
        out.projections.push_back(std::move(prj));
    }
    return out;
}

// ---------------------------------------------------------------------------
// projective covers, resolutions, Ext

template <class K>
struct Cover {
    Representation<K> proj;
    ModuleMap<K> onto;                 // proj → module
    std::vector<int> summand_vertices; // P_v per top basis element
};

template <class K>
Cover<K> projective_cover(const Representation<K>& m) {
    const BasicAlgebra<K>& alg = *m.algebra;
    const Quiver& q = alg.quiver();
    QuotData<K> t = top(m);
    Cover<K> out;
    std::vector<Representation<K>> parts;
    std::vector<Vec<K>> gens;  // generator lift in M at the summand's vertex
    for (int v = 0; v < q.num_vertices(); ++v) {
        for (Index k = 0; k < t.rep.dims[v]; ++k) {
            Mat<K> unit = Mat<K>::Zero(t.rep.dims[v], 1);
            unit(k, 0) = K(1);
            auto lift = try_solve(t.projection.comps[v], unit);
            if (!lift) throw std::logic_error("projective_cover: lift failed");
            parts.push_back(projective(alg, v));
            out.summand_vertices.push_back(v);
            gens.push_back(Vec<K>(lift->col(0)));
        }
    }
    DirectSum<K> ds = direct_sum(alg, parts);
    out.proj = ds.rep;
    ModuleMap<K> f = zero_map(out.proj, m);
    for (std::size_t s = 0; s < parts.size(); ++s) {
        int v = out.summand_vertices[s];
        ModuleMap<K> piece;
        piece.source = parts[s];
        piece.target = m;
        for (int w = 0; w < q.num_vertices(); ++w) {
            auto rows = alg.basis_between(w, v);
            Mat<K> comp(m.dims[w], static_cast<Index>(rows.size()));
            for (std::size_t c = 0; c < rows.size(); ++c)
                comp.col(static_cast<Index>(c)) =
                    path_action(m, alg.basis_path(rows[c])) * gens[s];
            piece.comps.push_back(std::move(comp));
        }
        f = add_maps(f, compose_maps(piece, ds.projections[s]));
    }
    if (!f.is_surjective())
        throw std::logic_error("projective_cover: cover is not onto");
    out.onto = std::move(f);
    return out;
}

/// Minimal projective resolution via iterated covers of syzygies.
/// terms[0] covers m; maps[k] : terms[k] → terms[k-1]; maps[0] is the
/// augmentation onto m. `complete` is false only if max_len truncated it.
template <class K>
struct Resolution {
    std::vector<Representation<K>> terms;
    std::vector<ModuleMap<K>> maps;
    bool complete = true;
    int length() const { return static_cast<int>(terms.size()) - 1; }
};

template <class K>
Resolution<K> projective_resolution(const Representation<K>& m,
                                    int max_len = -1) {
    if (max_len < 0) max_len = static_cast<int>(m.algebra->dim());
    Resolution<K> out;
    if (m.is_zero()) {
        out.terms.push_back(zero_representation(*m.algebra));
        out.maps.push_back(zero_map(out.terms[0], m));
        return out;
    }
    Cover<K> c = projective_cover(m);
    out.terms.push_back(c.proj);
    out.maps.push_back(c.onto);
    SubData<K> syzygy = kernel_of(c.onto);
    while (!syzygy.rep.is_zero()) {
        if (out.length() >= max_len) {
            out.complete = false;
            break;
        }
        Cover<K> next = projective_cover(syzygy.rep);
        out.terms.push_back(next.proj);
        out.maps.push_back(compose_maps(syzygy.inclusion, next.onto));
        syzygy = kernel_of(out.maps.back());
    }
    return out;
}

template <class K>
bool is_projective_module(const Representation<K>& m) {
    if (m.is_zero()) return true;
    Cover<K> c = projective_cover(m);
    return kernel_of(c.onto).rep.is_zero();
}

template <class K>
int projective_dimension(const Representation<K>& m) {
    auto res = projective_resolution(m);
    if (!res.complete)
        throw std::logic_error("projective_dimension: resolution truncated");
    return res.length();
}

/// dim Ext^i(M, N) as the degree-i cohomology of Hom(P_•, N).
template <class K>
Index ext_dim(const Representation<K>& m, const Representation<K>& n, int i) {
    if (i < 0) throw std::invalid_argument("ext: negative degree");
    if (i == 0) return hom(m, n).dim();
    auto res = projective_resolution(m, i + 1);
    if (res.length() < i) return 0;

    auto hom_at = [&](int j) { return hom(res.terms[j], n); };
    HomSpace<K> hi = hom_at(i);
    HomSpace<K> hprev = hom_at(i - 1);

    auto delta = [&](const HomSpace<K>& from, const HomSpace<K>& to, int j) {
        // φ ↦ φ ∘ d_j, matrix in the canonical hom bases
        Mat<K> mat(to.dim(), from.dim());
        for (Index b = 0; b < from.dim(); ++b)
            mat.col(b) = hom_coords(to, compose_maps(from.basis[b], res.maps[j]));
        return mat;
    };

    Index ker_dim;
    if (res.length() >= i + 1) {
        HomSpace<K> hnext = hom_at(i + 1);
        Mat<K> d_i = delta(hi, hnext, i + 1);
        ker_dim = hi.dim() - rank(d_i);
    } else {
        ker_dim = hi.dim();
    }
    Mat<K> d_prev = delta(hprev, hi, i);
    return ker_dim - rank(d_prev);
}

template <class K>
int global_dimension(const BasicAlgebra<K>& alg) {
    int g = 0;
    for (int v = 0; v < alg.num_vertices(); ++v)
        g = std::max(g, projective_dimension(simple(alg, v)));
    return g;
}

// ---------------------------------------------------------------------------
// split exactness

/// For a short exact sequence 0 → M →f N →g P → 0, decides whether g admits a
/// section (equivalently, the sequence splits); throws when the input is not
/// a short exact sequence.
template <class K>
bool is_split_exact(const ModuleMap<K>& f, const ModuleMap<K>& g) {
    if (!rep_eq(f.target, g.source))
        throw std::invalid_argument("is_split_exact: maps do not compose");
    if (!compose_maps(g, f).is_zero())
        throw std::invalid_argument("is_split_exact: not a complex");
    if (!f.is_injective() || !g.is_surjective())
        throw std::invalid_argument("is_split_exact: not short exact");
    for (std::size_t v = 0; v < f.comps.size(); ++v) {
        Index mid = f.target.dims[v];
        if (rank(f.comps[v]) + rank(g.comps[v]) != mid)
            throw std::invalid_argument("is_split_exact: not exact in the middle");
    }

    // section s : P → N with g∘s = id, solved as one affine system
    const Representation<K>& p = g.target;
    const Representation<K>& n = g.source;
    const Quiver& q = p.algebra->quiver();
    int nv = q.num_vertices();
    std::vector<Index> offset(nv + 1, 0);
    for (int v = 0; v < nv; ++v)
        offset[v + 1] = offset[v] + n.dims[v] * p.dims[v];
    Index unknowns = offset[nv];

    Index comm_rows = 0;
    for (int a = 0; a < q.num_arrows(); ++a)
        comm_rows += n.dims[q.arrow(a).source] * p.dims[q.arrow(a).target];
    Index eval_rows = 0;
    for (int v = 0; v < nv; ++v) eval_rows += p.dims[v] * p.dims[v];

    Mat<K> sys = Mat<K>::Zero(comm_rows + eval_rows, unknowns);
    Mat<K> rhs = Mat<K>::Zero(comm_rows + eval_rows, 1);
    Index r0 = 0;
    for (int a = 0; a < q.num_arrows(); ++a) {
        int u = q.arrow(a).source, w = q.arrow(a).target;
        Index block_rows = n.dims[u] * p.dims[w];
        if (block_rows == 0) continue;
        sys.block(r0, offset[u], block_rows, n.dims[u] * p.dims[u]) +=
            kron(Mat<K>(p.action[a].transpose()),
                 Mat<K>(Mat<K>::Identity(n.dims[u], n.dims[u])));
        sys.block(r0, offset[w], block_rows, n.dims[w] * p.dims[w]) -=
            kron(Mat<K>(Mat<K>::Identity(p.dims[w], p.dims[w])), n.action[a]);
        r0 += block_rows;
    }
    for (int v = 0; v < nv; ++v) {
        Index block_rows = p.dims[v] * p.dims[v];
        if (block_rows == 0) continue;
        sys.block(r0, offset[v], block_rows, n.dims[v] * p.dims[v]) =
            kron(Mat<K>(Mat<K>::Identity(p.dims[v], p.dims[v])), g.comps[v]);
        Vec<K> id = vectorize(Mat<K>(Mat<K>::Identity(p.dims[v], p.dims[v])));
        rhs.block(r0, 0, block_rows, 1) = id;
        r0 += block_rows;
    }
    return try_solve(sys, rhs).has_value();
}

// ---------------------------------------------------------------------------
// isomorphism search and decomposition

template <class K>
std::optional<ModuleMap<K>> find_isomorphism(const Representation<K>& m,
                                             const Representation<K>& n,
                                             std::uint64_t seed = 0) {
    if (m.algebra != n.algebra || m.dims != n.dims) return std::nullopt;
    if (m.total_dim() == 0) return zero_map(m, n);
    HomSpace<K> h = hom(m, n);
    Index k = h.dim();
    if (k == 0) return std::nullopt;
    auto test = [&](const Vec<K>& coords) -> std::optional<ModuleMap<K>> {
        ModuleMap<K> f = hom_combo(h, coords);
        if (f.is_iso()) return f;
        return std::nullopt;
    };
    for (Index b = 0; b < k; ++b) {
        Vec<K> c = Vec<K>::Zero(k);
        c(b) = K(1);
        if (auto f = test(c)) return f;
    }
    const FieldSpec& fs = m.algebra->field();
    if (!fs.is_rationals()) {
        // exhaustive over small coefficient spaces
        double combos = 1;
        for (Index i = 0; i < k && combos <= 4096; ++i)
            combos *= static_cast<double>(fs.p);
        if (combos <= 4096) {
            std::vector<std::int64_t> digits(k, 0);
            while (true) {
                Index pos = 0;
                while (pos < k && ++digits[pos] == fs.p) digits[pos++] = 0;
                if (pos == k) break;
                Vec<K> c(k);
                for (Index i = 0; i < k; ++i)
                    c(i) = FieldOps<K>::from_int(fs, digits[i]);
                if (auto f = test(c)) return f;
            }
            return std::nullopt;
        }
    }
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull);
    for (int t = 0; t < 256; ++t) {
        Vec<K> c(k);
        for (Index i = 0; i < k; ++i) {
            std::int64_t r = fs.is_rationals()
                                 ? static_cast<std::int64_t>(rng() % 7) - 3
                                 : static_cast<std::int64_t>(rng() % fs.p);
            c(i) = FieldOps<K>::from_int(fs, r);
        }
        if (auto f = test(c)) return f;
    }
    return std::nullopt;
}

namespace detail {

// Fitting split along the stable kernel/image of an endomorphism.
template <class K>
std::optional<std::pair<SubData<K>, SubData<K>>> fitting_split(
    const Representation<K>& m, const std::vector<Mat<K>>& endo) {
    Index n = m.total_dim();
    int steps = 1;
    while ((Index(1) << steps) < n) ++steps;
    std::vector<Mat<K>> power = endo;
    for (int s = 0; s < steps; ++s)
        for (std::size_t v = 0; v < power.size(); ++v)
            power[v] = power[v] * power[v];
    Index ker_total = 0;
    std::vector<Mat<K>> kers, ims;
    for (std::size_t v = 0; v < power.size(); ++v) {
        kers.push_back(kernel_basis(power[v]));
        ims.push_back(column_space_basis(power[v]));
        ker_total += kers.back().cols();
    }
    if (ker_total == 0 || ker_total == n) return std::nullopt;
    return std::make_pair(sub_from_lifts(m, kers), sub_from_lifts(m, ims));
}

inline FpPoly min_poly_total(const Mat<Fp>& total, std::int64_t p) {
    Index n = total.rows();
    FpPoly mp = fppoly::one(p);
    for (Index start = 0; start < n; ++start) {
        Mat<Fp> krylov(n, 0);
        Vec<Fp> v = Vec<Fp>::Zero(n);
        v(start) = Fp(1, p);
        while (true) {
            auto s = try_solve(krylov, Mat<Fp>(v));
            if (s) {
                std::vector<std::int64_t> coeffs;
                for (Index i = 0; i < s->rows(); ++i)
                    coeffs.push_back(-(*s)(i, 0).value());
                coeffs.push_back(1);
                mp = fppoly::div(fppoly::mul(mp, fppoly::make(p, coeffs)),
                                 fppoly::gcd(mp, fppoly::make(p, coeffs)));
                break;
            }
            krylov = hstack(krylov, Mat<Fp>(v));
            v = total * v;
        }
        if (mp.degree() == n) break;
    }
    return mp;
}

}  // namespace detail

/// Indecomposable direct summands over a prime field, meataxe style: split
/// along Fitting decompositions and generalized eigenspaces of endomorphisms,
/// recurse, and certify indecomposability when the endomorphism algebra is
/// local (1-dimensional, or exhaustively checked for small End).
template <class K>
std::vector<Representation<K>> decompose(const Representation<K>& m,
                                         std::uint64_t seed = 0) {
    if constexpr (!std::is_same_v<K, Fp>) {
        throw std::invalid_argument("decompose: supported over prime fields only");
    } else {
        const std::int64_t p = m.algebra->field().p;
        std::vector<Representation<K>> done;
        std::vector<Representation<K>> work{m};
        std::mt19937_64 rng(seed + 0x51ed2701);

        auto endo_of = [&](const HomSpace<K>& h, const Vec<K>& coords) {
            ModuleMap<K> f = hom_combo(h, coords);
            return f.comps;
        };
        auto block_diag = [&](const std::vector<Mat<K>>& comps) {
            Index n = 0;
            for (const auto& c : comps) n += c.rows();
            Mat<K> total = Mat<K>::Zero(n, n);
            Index at = 0;
            for (const auto& c : comps) {
                total.block(at, at, c.rows(), c.cols()) = c;
                at += c.rows();
            }
            return total;
        };
        auto poly_at = [&](const FpPoly& q, const std::vector<Mat<K>>& comps) {
            std::vector<Mat<K>> out;
            for (const auto& c : comps) {
                Index nn = c.rows();
                Mat<K> acc = Mat<K>::Zero(nn, nn);
                for (int d = q.degree(); d >= 0; --d) {
                    acc = acc * c;
                    for (Index i = 0; i < nn; ++i)
                        acc(i, i) += Fp(q.c[d], p);
                }
                out.push_back(acc);
            }
            return out;
        };
        auto try_split =
            [&](const Representation<K>& x, const std::vector<Mat<K>>& f)
            -> std::optional<std::vector<Representation<K>>> {
            if (auto fit = detail::fitting_split(x, f))
                return std::vector<Representation<K>>{fit->first.rep,
                                                      fit->second.rep};
            // invertible or nilpotent; try generalized eigenspaces
            FpPoly mp = detail::min_poly_total(block_diag(f), p);
            auto factors = fppoly::distinct_irreducible_factors(mp, rng);
            if (factors.size() < 2) return std::nullopt;
            std::vector<Representation<K>> parts;
            Index total = 0;
            for (const auto& q : factors) {
                auto qf = poly_at(q, f);
                auto fit = detail::fitting_split(x, qf);
                if (!fit) {
                    // q(f) nilpotent on all of x: single factor after all
                    continue;
                }
                parts.push_back(fit->first.rep);
                total += parts.back().total_dim();
            }
            if (parts.size() < 2 || total != x.total_dim())
                throw std::logic_error("decompose: eigenspace split inconsistent");
            return parts;
        };

        while (!work.empty()) {
            Representation<K> x = work.back();
            work.pop_back();
            if (x.is_zero()) continue;
            HomSpace<K> endo = hom(x, x);
            Index k = endo.dim();
            if (k == 1) {
                done.push_back(x);
                continue;
            }
            bool split = false;
            auto consume = [&](std::vector<Representation<K>> parts) {
                for (auto& part : parts) work.push_back(std::move(part));
                split = true;
            };
            for (Index b = 0; b < k && !split; ++b) {
                Vec<K> c = Vec<K>::Zero(k);
                c(b) = Fp(1, p);
                if (auto parts = try_split(x, endo_of(endo, c)))
                    consume(std::move(*parts));
            }
            for (int t = 0; t < 64 && !split; ++t) {
                Vec<K> c(k);
                for (Index i = 0; i < k; ++i)
                    c(i) = Fp(static_cast<std::int64_t>(rng() % p), p);
                if (auto parts = try_split(x, endo_of(endo, c)))
                    consume(std::move(*parts));
            }
            if (split) continue;

            // No splitting found: certify locality of End(x) exhaustively when
            // the algebra is small enough to enumerate.
            double combos = 1;
            bool enumerable = true;
            for (Index i = 0; i < k; ++i) {
                combos *= static_cast<double>(p);
                if (combos > 65536) {
                    enumerable = false;
                    break;
                }
            }
            if (!enumerable)
                throw std::runtime_error(
                    "decompose: could not certify indecomposability");
            std::vector<std::int64_t> digits(k, 0);
            while (!split) {
                Index pos = 0;
                while (pos < k && ++digits[pos] == p) digits[pos++] = 0;
                if (pos == k) break;
                Vec<K> c(k);
                for (Index i = 0; i < k; ++i) c(i) = Fp(digits[i], p);
                if (auto fit = detail::fitting_split(x, endo_of(endo, c)))
                    consume({fit->first.rep, fit->second.rep});
            }
            if (!split) done.push_back(x);  // every endo nilpotent or invertible
        }
        std::sort(done.begin(), done.end(),
                  [](const Representation<K>& a, const Representation<K>& b) {
                      return a.dims < b.dims;
                  });
        return done;
    }
}

template <class K>
std::vector<std::pair<Representation<K>, int>> decompose_grouped(
    const Representation<K>& m, std::uint64_t seed = 0) {
    auto parts = decompose(m, seed);
    std::vector<std::pair<Representation<K>, int>> out;
    for (auto& p : parts) {
        bool matched = false;
        for (auto& [rep, count] : out)
            if (find_isomorphism(rep, p, seed)) {
                ++count;
                matched = true;
                break;
            }
        if (!matched) out.push_back({std::move(p), 1});
    }
    return out;
}

/// Random module as the cokernel of a random map between random projectives:
/// valid over any algebra, relations included.
template <class K>
Representation<K> random_module(const BasicAlgebra<K>& alg,
                                std::mt19937_64& rng, int max_summands = 3) {
    auto random_proj = [&](int count) {
        std::vector<Representation<K>> parts;
        for (int i = 0; i < count; ++i)
            parts.push_back(projective(
                alg, static_cast<int>(rng() % alg.num_vertices())));
        return direct_sum(alg, parts).rep;
    };
    Representation<K> q0 =
        random_proj(1 + static_cast<int>(rng() % max_summands));
    Representation<K> q1 =
        random_proj(1 + static_cast<int>(rng() % max_summands));
    HomSpace<K> h = hom(q1, q0);
    Vec<K> c(h.dim());
    const FieldSpec& fs = alg.field();
    for (Index i = 0; i < h.dim(); ++i) {
        std::int64_t r = fs.is_rationals()
                             ? static_cast<std::int64_t>(rng() % 5) - 2
                             : static_cast<std::int64_t>(rng() % fs.p);
        c(i) = FieldOps<K>::from_int(fs, r);
    }
    return cokernel_of(hom_combo(h, c)).rep;
}

}  // namespace qpa
