#include "qpa/quiver.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qpa {

void Quiver::add_vertex(const std::string& name) {
    if (vertex_by_name_.count(name))
        throw std::invalid_argument("quiver: duplicate vertex '" + name + "'");
    vertex_by_name_[name] = num_vertices();
    vertices_.push_back(name);
}

void Quiver::add_arrow(const std::string& name, const std::string& source,
                       const std::string& target) {
    if (arrow_by_name_.count(name))
        throw std::invalid_argument("quiver: duplicate arrow '" + name + "'");
    auto s = find_vertex(source);
    auto t = find_vertex(target);
    if (!s || !t)
        throw std::invalid_argument("quiver: arrow '" + name +
                                    "' has an undeclared endpoint");
    arrow_by_name_[name] = num_arrows();
    arrows_.push_back(Arrow{name, *s, *t});
}

int Quiver::vertex_index(const std::string& name) const {
    auto v = find_vertex(name);
    if (!v) throw std::invalid_argument("quiver: unknown vertex '" + name + "'");
    return *v;
}

std::optional<int> Quiver::find_vertex(const std::string& name) const {
    auto it = vertex_by_name_.find(name);
    if (it == vertex_by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Quiver::find_arrow(const std::string& name) const {
    auto it = arrow_by_name_.find(name);
    if (it == arrow_by_name_.end()) return std::nullopt;
    return it->second;
}

Path lazy_path(int vertex) { return Path{vertex, vertex, {}}; }

bool path_less(const Quiver& q, const Path& a, const Path& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.is_lazy()) return a.source < b.source;
    for (int i = 0; i < a.length(); ++i) {
        const std::string& na = q.arrow(a.arrows[i]).name;
        const std::string& nb = q.arrow(b.arrows[i]).name;
        if (na != nb) return na < nb;
    }
    return false;
}

std::optional<Path> compose(const Quiver&, const Path& p, const Path& r) {
    if (r.target != p.source) return std::nullopt;
    Path out;
    out.source = r.source;
    out.target = p.target;
    out.arrows = r.arrows;
    out.arrows.insert(out.arrows.end(), p.arrows.begin(), p.arrows.end());
    return out;
}

bool is_acyclic(const Quiver& q) {
    // DFS with colors
    enum { White, Grey, Black };
    std::vector<int> color(q.num_vertices(), White);
    std::function<bool(int)> visit = [&](int v) {
        color[v] = Grey;
        for (const Arrow& a : q.arrows()) {
            if (a.source != v) continue;
            if (color[a.target] == Grey) return false;
            if (color[a.target] == White && !visit(a.target)) return false;
        }
        color[v] = Black;
        return true;
    };
    for (int v = 0; v < q.num_vertices(); ++v)
        if (color[v] == White && !visit(v)) return false;
    return true;
}

std::vector<Path> enumerate_paths(const Quiver& q) {
    if (!is_acyclic(q))
        throw std::invalid_argument(
            "enumerate_paths: quiver has an oriented cycle");
    std::vector<Path> out;
    std::function<void(Path&)> extend = [&](Path& p) {
        out.push_back(p);
        for (int a = 0; a < q.num_arrows(); ++a) {
            if (q.arrow(a).source != p.target) continue;
            p.arrows.push_back(a);
            int save = p.target;
            p.target = q.arrow(a).target;
            extend(p);
            p.target = save;
            p.arrows.pop_back();
        }
    };
    for (int v = 0; v < q.num_vertices(); ++v) {
        Path p = lazy_path(v);
        extend(p);
    }
    std::sort(out.begin(), out.end(),
              [&](const Path& a, const Path& b) { return path_less(q, a, b); });
    return out;
}

std::string term_string(const Quiver& q, const Path& p) {
    if (p.is_lazy()) return "e_" + q.vertex_name(p.source);
    std::string s;
    for (int i = p.length() - 1; i >= 0; --i) {
        s += q.arrow(p.arrows[i]).name;
        if (i > 0) s += "*";
    }
    return s;
}

Quiver linear_quiver(int n) {
    Quiver q;
    for (int i = 1; i <= n; ++i) q.add_vertex(std::to_string(i));
    for (int i = 1; i < n; ++i)
        q.add_arrow("a" + std::to_string(i), std::to_string(i),
                    std::to_string(i + 1));
    return q;
}

BuiltinQuivers builtin_quivers() {
    BuiltinQuivers b;
    b.a10 = linear_quiver(10);
    for (int i = 1; i <= 10; ++i) b.e.add_vertex(std::to_string(i));
    for (int i = 2; i <= 9; ++i)
        b.e.add_arrow("b" + std::to_string(i), std::to_string(i),
                      std::to_string(i + 1));
    b.e.add_arrow("c8", "8", "1");
    return b;
}

}  // namespace qpa
