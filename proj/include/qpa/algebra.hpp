#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "qpa/linalg.hpp"
#include "qpa/quiver.hpp"
#include "qpa/scalars.hpp"

namespace qpa {

/// k-linear combination of parallel paths (same source, same target).
template <class K>
struct Relation {
    std::vector<std::pair<K, Path>> terms;
};

/// Finite-dimensional algebra kQ/I for an acyclic quiver Q and an admissible
/// ideal I, with a normal-form path basis.
///
/// Products follow the composition convention of paths: x·y is "y, then x",
/// nonzero only when source(x) = target(y). Paths from i to j span e_j·A·e_i.
/// Relations are turned into a length-lex rewriting system (largest term is
/// the lead); relation sets whose overlaps do not resolve are rejected.
template <class K>
class BasicAlgebra {
public:
    BasicAlgebra(Quiver quiver, FieldSpec field, std::vector<Relation<K>> rels)
        : quiver_(std::move(quiver)), field_(field) {
        if (!is_acyclic(quiver_))
            throw std::invalid_argument("algebra: quiver has an oriented cycle");
        validate_relations(rels);
        build_rules(rels);
        check_confluence();
        build_basis();
        build_table();
    }

    const Quiver& quiver() const { return quiver_; }
    const FieldSpec& field() const { return field_; }
    K one() const { return FieldOps<K>::from_int(field_, 1); }
    Index dim() const { return static_cast<Index>(basis_.size()); }
    int num_vertices() const { return quiver_.num_vertices(); }
    const std::vector<Path>& basis() const { return basis_; }
    const Path& basis_path(Index i) const { return basis_[i]; }
    bool is_hereditary() const { return rules_.empty(); }

    Index basis_index(const Path& p) const {
        auto it = index_.find(key(p));
        if (it == index_.end())
            throw std::invalid_argument("algebra: path is not in normal form");
        return it->second;
    }

    Vec<K> zero_element() const { return Vec<K>::Zero(dim()); }

    Vec<K> basis_element(Index i) const {
        Vec<K> v = zero_element();
        v(i) = one();
        return v;
    }

    Vec<K> idempotent(int vertex) const {
        return basis_element(basis_index(lazy_path(vertex)));
    }

    Vec<K> unit() const {
        Vec<K> v = zero_element();
        for (int i = 0; i < num_vertices(); ++i)
            v(basis_index(lazy_path(i))) = one();
        return v;
    }

    /// Normal form of an arbitrary path of the quiver, as basis coordinates.
    Vec<K> path_element(const Path& p) const {
        Vec<K> out = zero_element();
        accumulate(p, one(), out);
        return out;
    }

    Vec<K> multiply(const Vec<K>& x, const Vec<K>& y) const {
        Vec<K> out = zero_element();
        for (Index i = 0; i < dim(); ++i) {
            if (x(i) == K(0)) continue;
            for (Index j = 0; j < dim(); ++j) {
                if (y(j) == K(0)) continue;
                const Vec<K>& prod = table_[i][j];
                for (Index t = 0; t < dim(); ++t)
                    out(t) = out(t) + x(i) * y(j) * prod(t);
            }
        }
        return out;
    }

    Mat<K> left_mult_matrix(const Vec<K>& x) const {
        Mat<K> m(dim(), dim());
        for (Index j = 0; j < dim(); ++j) {
            Vec<K> col = Vec<K>::Zero(dim());
            for (Index i = 0; i < dim(); ++i) {
                if (x(i) == K(0)) continue;
                const Vec<K>& prod = table_[i][j];
                for (Index t = 0; t < dim(); ++t)
                    col(t) = col(t) + x(i) * prod(t);
            }
            m.col(j) = col;
        }
        return m;
    }

    /// Indices of the basis paths from i to j: a basis of e_j·A·e_i.
    std::vector<Index> basis_between(int i, int j) const {
        if (i < 0 || i >= num_vertices() || j < 0 || j >= num_vertices())
            throw std::invalid_argument("basis_between: unknown vertex");
        std::vector<Index> out;
        for (Index t = 0; t < dim(); ++t)
            if (basis_[t].source == i && basis_[t].target == j)
                out.push_back(t);
        return out;
    }

    Index dim_between(int i, int j) const {
        return static_cast<Index>(basis_between(i, j).size());
    }

    const std::vector<Relation<K>>& relations() const { return relations_; }

    std::string element_string(const Vec<K>& x) const {
        std::string s;
        for (Index i = 0; i < dim(); ++i) {
            if (x(i) == K(0)) continue;
            if (!s.empty()) s += " + ";
            std::string c = FieldOps<K>::str(x(i));
            if (c != "1") s += c + "*";
            s += term_string(quiver_, basis_[i]);
        }
        return s.empty() ? "0" : s;
    }

private:
    struct Rule {
        std::vector<int> lead;                      // arrow ids
        std::vector<std::pair<K, Path>> rest;       // lead rewrites to this
        int source = 0, target = 0;
    };

    static std::string key(const Path& p) {
        std::string s = std::to_string(p.source) + "|";
        for (int a : p.arrows) s += std::to_string(a) + ",";
        return s;
    }

    void validate_relations(const std::vector<Relation<K>>& rels) const {
        for (const auto& r : rels) {
            if (r.terms.empty())
                throw std::invalid_argument("relation: empty combination");
            int s = r.terms.front().second.source;
            int t = r.terms.front().second.target;
            for (const auto& [c, p] : r.terms) {
                if (p.length() < 2)
                    throw std::invalid_argument(
                        "relation: not admissible (a term has length < 2)");
                if (p.source != s || p.target != t)
                    throw std::invalid_argument(
                        "relation: terms are not parallel paths");
            }
        }
    }

    // Turn relations into rewriting rules lead -> rest, inter-reduced so that
    // no rule's lead occurs in another rule.
    void build_rules(std::vector<Relation<K>> rels) {
        for (auto& r : rels)
            for (auto& [c, p] : r.terms)
                c = c + FieldOps<K>::from_int(field_, 0);
        relations_ = rels;
        std::vector<Relation<K>> pending = std::move(rels);
        bool changed = true;
        while (changed) {
            changed = false;
            rules_.clear();
            std::vector<Relation<K>> reduced;
            for (auto& r : pending) {
                auto terms = combine(r.terms);
                if (!terms.empty()) reduced.push_back(Relation<K>{terms});
            }
            // sort so that the relation with the largest lead comes last;
            // rules are then built in a stable order
            std::sort(reduced.begin(), reduced.end(),
                      [&](const Relation<K>& a, const Relation<K>& b) {
                          return path_less(quiver_, lead_of(a), lead_of(b));
                      });
            for (std::size_t i = 0; i < reduced.size(); ++i) {
                // reduce relation i by rules from the earlier relations
                rules_.clear();
                for (std::size_t j = 0; j < i; ++j) push_rule(reduced[j]);
                auto terms = reduce_terms(reduced[i].terms);
                if (!mat_eq_terms(terms, reduced[i].terms)) {
                    changed = true;
                    pending = reduced;
                    pending[i].terms = terms;
                    pending.erase(
                        std::remove_if(pending.begin(), pending.end(),
                                       [](const Relation<K>& r) {
                                           return r.terms.empty();
                                       }),
                        pending.end());
                    break;
                }
            }
            if (!changed) {
                rules_.clear();
                for (const auto& r : reduced) push_rule(r);
                pending = reduced;
            }
        }
    }

    static bool mat_eq_terms(const std::vector<std::pair<K, Path>>& a,
                             const std::vector<std::pair<K, Path>>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!(a[i].first == b[i].first) || !(a[i].second == b[i].second))
                return false;
        return true;
    }

    Path lead_of(const Relation<K>& r) const {
        Path best = r.terms.front().second;
        for (const auto& [c, p] : r.terms)
            if (path_less(quiver_, best, p)) best = p;
        return best;
    }

    std::vector<std::pair<K, Path>> combine(
        const std::vector<std::pair<K, Path>>& terms) const {
        std::map<std::string, std::pair<K, Path>> acc;
        for (const auto& [c, p] : terms) {
            auto [it, fresh] = acc.try_emplace(key(p), std::make_pair(c, p));
            if (!fresh) it->second.first = it->second.first + c;
        }
        std::vector<std::pair<K, Path>> out;
        for (auto& [k, cp] : acc)
            if (!(cp.first == K(0))) out.push_back(cp);
        return out;
    }

    void push_rule(const Relation<K>& r) {
        Path lead = lead_of(r);
        K lead_coeff = K(0);
        Rule rule;
        rule.lead = lead.arrows;
        rule.source = lead.source;
        rule.target = lead.target;
        for (const auto& [c, p] : r.terms) {
            if (p == lead)
                lead_coeff = c;
            else
                rule.rest.push_back({c, p});
        }
        for (auto& [c, p] : rule.rest) c = -(c / lead_coeff);
        rules_.push_back(std::move(rule));
    }

    // first (rule, position) whose lead occurs in `arrows`, scanning left
    std::optional<std::pair<std::size_t, std::size_t>> find_redex(
        const std::vector<int>& arrows) const {
        for (std::size_t pos = 0; pos < arrows.size(); ++pos)
            for (std::size_t r = 0; r < rules_.size(); ++r) {
                const auto& lead = rules_[r].lead;
                if (pos + lead.size() > arrows.size()) continue;
                if (std::equal(lead.begin(), lead.end(), arrows.begin() + pos))
                    return std::make_pair(r, pos);
            }
        return std::nullopt;
    }

    // out += coeff * normal_form(p); requires the basis index to be built,
    // except during construction where `collect` gathers raw terms instead.
    void accumulate(const Path& p, const K& coeff, Vec<K>& out) const {
        auto terms = reduce_terms({{coeff, p}});
        for (const auto& [c, q] : terms) out(basis_index(q)) += c;
    }

    std::vector<std::pair<K, Path>> reduce_terms(
        std::vector<std::pair<K, Path>> work) const {
        std::vector<std::pair<K, Path>> done;
        while (!work.empty()) {
            auto [c, p] = work.back();
            work.pop_back();
            auto redex = find_redex(p.arrows);
            if (!redex) {
                done.push_back({c, p});
                continue;
            }
            auto [r, pos] = *redex;
            const Rule& rule = rules_[r];
            for (const auto& [rc, rp] : rule.rest) {
                Path replaced;
                replaced.arrows.assign(p.arrows.begin(), p.arrows.begin() + pos);
                replaced.arrows.insert(replaced.arrows.end(), rp.arrows.begin(),
                                       rp.arrows.end());
                replaced.arrows.insert(replaced.arrows.end(),
                                       p.arrows.begin() + pos + rule.lead.size(),
                                       p.arrows.end());
                replaced.source = p.source;
                replaced.target = p.target;
                work.push_back({c * rc, replaced});
            }
        }
        return combine(done);
    }

    // Diamond-lemma overlap test; ambiguous relation sets are rejected.
    void check_confluence() const {
        for (std::size_t r1 = 0; r1 < rules_.size(); ++r1)
            for (std::size_t r2 = 0; r2 < rules_.size(); ++r2) {
                const auto& u = rules_[r1].lead;
                const auto& w = rules_[r2].lead;
                // overlap: proper suffix of u equals proper prefix of w
                for (std::size_t k = 1; k < std::min(u.size(), w.size()); ++k) {
                    if (!std::equal(u.end() - k, u.end(), w.begin())) continue;
                    std::vector<int> word(u.begin(), u.end());
                    word.insert(word.end(), w.begin() + k, w.end());
                    check_ambiguity(word, r1, 0, r2, u.size() - k);
                }
                // containment: w inside u (proper)
                if (r1 != r2 && w.size() < u.size()) {
                    for (std::size_t pos = 0; pos + w.size() <= u.size(); ++pos)
                        if (std::equal(w.begin(), w.end(), u.begin() + pos))
                            check_ambiguity(u, r1, 0, r2, pos);
                }
            }
    }

    void check_ambiguity(const std::vector<int>& word, std::size_t r1,
                         std::size_t pos1, std::size_t r2,
                         std::size_t pos2) const {
        auto nf1 = reduce_terms(apply_rule(word, r1, pos1));
        auto nf2 = reduce_terms(apply_rule(word, r2, pos2));
        if (!mat_eq_terms(nf1, nf2))
            throw std::invalid_argument(
                "relations: rewriting system is not confluent (unresolved "
                "overlap); refine the relation set");
    }

    std::vector<std::pair<K, Path>> apply_rule(const std::vector<int>& word,
                                               std::size_t r,
                                               std::size_t pos) const {
        const Rule& rule = rules_[r];
        int source = quiver_.arrow(word.front()).source;
        int target = quiver_.arrow(word.back()).target;
        std::vector<std::pair<K, Path>> out;
        for (const auto& [rc, rp] : rule.rest) {
            Path p;
            p.arrows.assign(word.begin(), word.begin() + pos);
            p.arrows.insert(p.arrows.end(), rp.arrows.begin(), rp.arrows.end());
            p.arrows.insert(p.arrows.end(), word.begin() + pos + rule.lead.size(),
                            word.end());
            p.source = source;
            p.target = target;
            out.push_back({rc, p});
        }
        return out;
    }

    void build_basis() {
        for (const Path& p : enumerate_paths(quiver_)) {
            if (find_redex(p.arrows)) continue;
            index_[key(p)] = static_cast<Index>(basis_.size());
            basis_.push_back(p);
        }
    }

    void build_table() {
        table_.resize(basis_.size());
        for (Index i = 0; i < dim(); ++i) {
            table_[i].resize(basis_.size());
            for (Index j = 0; j < dim(); ++j) {
                Vec<K> prod = zero_element();
                auto composed = compose(quiver_, basis_[i], basis_[j]);
                if (composed) accumulate(*composed, one(), prod);
                table_[i][j] = std::move(prod);
            }
        }
    }

    Quiver quiver_;
    FieldSpec field_;
    std::vector<Relation<K>> relations_;
    std::vector<Rule> rules_;
    std::vector<Path> basis_;
    std::map<std::string, Index> index_;
    std::vector<std::vector<Vec<K>>> table_;
};

template <class K>
BasicAlgebra<K> path_algebra(const Quiver& q, const FieldSpec& field) {
    if (!FieldOps<K>::matches(field))
        throw std::invalid_argument("path_algebra: scalar/field mismatch");
    return BasicAlgebra<K>(q, field, {});
}

template <class K>
BasicAlgebra<K> quotient(const BasicAlgebra<K>& a,
                         std::vector<Relation<K>> rels) {
    auto all = a.relations();
    all.insert(all.end(), rels.begin(), rels.end());
    return BasicAlgebra<K>(a.quiver(), a.field(), std::move(all));
}

/// Relation given by arrow-name chains; each chain is written
/// first-traversed-first (the display order of the paper reverses it).
template <class K>
Relation<K> monomial_relation(const Quiver& q,
                              const std::vector<std::string>& arrow_names) {
    Relation<K> r;
    Path p;
    std::vector<int> ids;
    for (const auto& n : arrow_names) {
        auto a = q.find_arrow(n);
        if (!a) throw std::invalid_argument("relation: unknown arrow '" + n + "'");
        ids.push_back(*a);
    }
    if (ids.empty()) throw std::invalid_argument("relation: empty path");
    p.arrows = ids;
    p.source = q.arrow(ids.front()).source;
    p.target = q.arrow(ids.back()).target;
    for (std::size_t i = 0; i + 1 < ids.size(); ++i)
        if (q.arrow(ids[i]).target != q.arrow(ids[i + 1]).source)
            throw std::invalid_argument("relation: arrows are not composable");
    r.terms.push_back({K(1), p});
    return r;
}

/// The example pair: R = kA_10 / (a8 a7 ... a1) and S = kE.
template <class K>
BasicAlgebra<K> algebra_R(const FieldSpec& field) {
    auto b = builtin_quivers();
    std::vector<std::string> chain;
    for (int i = 1; i <= 8; ++i) chain.push_back("a" + std::to_string(i));
    auto rel = monomial_relation<K>(b.a10, chain);
    return BasicAlgebra<K>(b.a10, field, {rel});
}

template <class K>
BasicAlgebra<K> algebra_S(const FieldSpec& field) {
    auto b = builtin_quivers();
    return path_algebra<K>(b.e, field);
}

/// Abstract finite-dimensional algebra given by structure constants, with a
/// distinguished complete orthogonal set of idempotents. Both kQ/I and the
/// endomorphism algebra of a complex are presented this way for the
/// quiver-presentation machinery.
template <class K>
struct TableAlgebra {
    FieldSpec field;
    std::vector<std::string> basis_names;
    std::vector<Mat<K>> left_mult;   // L_a per basis element
    Vec<K> unit;
    std::vector<Vec<K>> idempotents;

    Index dim() const { return static_cast<Index>(basis_names.size()); }

    Mat<K> left_mult_of(const Vec<K>& x) const {
        Mat<K> m = Mat<K>::Zero(dim(), dim());
        for (Index i = 0; i < dim(); ++i) {
            if (x(i) == K(0)) continue;
            m += x(i) * left_mult[i];
        }
        return m;
    }

    Vec<K> multiply(const Vec<K>& x, const Vec<K>& y) const {
        return left_mult_of(x) * y;
    }

    /// Exhaustive associativity over basis triples; products of basis
    /// elements are short combinations, so the check walks sparse entries.
    bool is_associative() const {
        using Sparse = std::vector<std::pair<Index, K>>;
        std::vector<std::vector<Sparse>> prod(dim(),
                                              std::vector<Sparse>(dim()));
        for (Index a = 0; a < dim(); ++a)
            for (Index b = 0; b < dim(); ++b)
                for (Index t = 0; t < dim(); ++t)
                    if (!(left_mult[a](t, b) == K(0)))
                        prod[a][b].push_back({t, left_mult[a](t, b)});
        auto combine = [&](const Sparse& x, Index c) {
            std::map<Index, K> acc;
            for (const auto& [t, coeff] : x)
                for (const auto& [u, c2] : prod[t][c]) {
                    auto [it, fresh] = acc.try_emplace(u, K(coeff * c2));
                    if (!fresh) it->second = it->second + coeff * c2;
                }
            return acc;
        };
        auto combine_right = [&](Index a, const Sparse& y) {
            std::map<Index, K> acc;
            for (const auto& [t, coeff] : y)
                for (const auto& [u, c2] : prod[a][t]) {
                    auto [it, fresh] = acc.try_emplace(u, K(coeff * c2));
                    if (!fresh) it->second = it->second + coeff * c2;
                }
            return acc;
        };
        auto equal = [](std::map<Index, K> lhs, std::map<Index, K> rhs) {
            for (auto& [k, v] : rhs) {
                auto [it, fresh] = lhs.try_emplace(k, K(-v));
                if (!fresh) it->second = it->second - v;
            }
            for (auto& [k, v] : lhs)
                if (!(v == K(0))) return false;
            return true;
        };
        for (Index a = 0; a < dim(); ++a)
            for (Index b = 0; b < dim(); ++b)
                for (Index c = 0; c < dim(); ++c)
                    if (!equal(combine(prod[a][b], c), combine_right(a, prod[b][c])))
                        return false;
        return true;
    }

    bool idempotents_complete() const {
        Vec<K> sum = Vec<K>::Zero(dim());
        for (const auto& e : idempotents) {
            sum += e;
            for (const auto& f : idempotents) {
                Vec<K> prod = multiply(e, f);
                Vec<K> expect = (&e == &f) ? e : Vec<K>(Vec<K>::Zero(dim()));
                if (!mat_eq<K>(Mat<K>(prod), Mat<K>(expect))) return false;
            }
        }
        return mat_eq<K>(Mat<K>(sum), Mat<K>(unit));
    }
};

template <class K>
TableAlgebra<K> to_table(const BasicAlgebra<K>& a) {
    TableAlgebra<K> t;
    t.field = a.field();
    for (Index i = 0; i < a.dim(); ++i)
        t.basis_names.push_back(term_string(a.quiver(), a.basis_path(i)));
    for (Index i = 0; i < a.dim(); ++i)
        t.left_mult.push_back(a.left_mult_matrix(a.basis_element(i)));
    t.unit = a.unit();
    for (int v = 0; v < a.num_vertices(); ++v)
        t.idempotents.push_back(a.idempotent(v));
    return t;
}

}  // namespace qpa
