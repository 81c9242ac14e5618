#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qpa {

struct Arrow {
    std::string name;
    int source = 0;  // vertex index
    int target = 0;
};

/// Finite quiver: ordered vertex and arrow lists (Q_0, Q_1 with s, t).
/// Vertex and arrow names are unique; endpoints must be declared vertices.
class Quiver {
public:
    void add_vertex(const std::string& name);
    void add_arrow(const std::string& name, const std::string& source,
                   const std::string& target);

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(int a) const { return arrows_[a]; }
    const std::string& vertex_name(int v) const { return vertices_[v]; }

    int vertex_index(const std::string& name) const;  // throws if unknown
    std::optional<int> find_vertex(const std::string& name) const;
    std::optional<int> find_arrow(const std::string& name) const;

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::unordered_map<std::string, int> vertex_by_name_;
    std::unordered_map<std::string, int> arrow_by_name_;
};

/// Path in a quiver: arrow indices in traversal order (first-applied first).
/// An empty arrow list is the lazy path at source == target.
struct Path {
    int source = 0;
    int target = 0;
    std::vector<int> arrows;

    bool is_lazy() const { return arrows.empty(); }
    int length() const { return static_cast<int>(arrows.size()); }

    friend bool operator==(const Path&, const Path&) = default;
};

Path lazy_path(int vertex);

/// Length-then-lexicographic order on arrow name sequences; lazy paths
/// come first, ordered by vertex declaration.
bool path_less(const Quiver& q, const Path& a, const Path& b);

/// Composition p∘q (q traversed first): defined when target(q) = source(p).
std::optional<Path> compose(const Quiver& q, const Path& p, const Path& r);

bool is_acyclic(const Quiver& q);

/// All paths, lazy paths included, in canonical order.
/// Throws if the quiver has an oriented cycle.
std::vector<Path> enumerate_paths(const Quiver& q);

/// Product notation with the last-applied factor on the left,
/// e.g. "a2*a1" for the path 1→3 of A_n; lazy paths print as "e_<v>".
std::string term_string(const Quiver& q, const Path& p);

Quiver linear_quiver(int n);  // 1 → 2 → ... → n with arrows a1..a(n-1)

struct BuiltinQuivers {
    Quiver a10;
    Quiver e;
};

/// The two quivers of the worked example: the linear A_10 and the
/// branched quiver E (chain 2 → 3 → ... → 10 plus the arrow 8 → 1; the
/// orientation of the branch arrow is the one confirmed by the
/// endomorphism-algebra computation).
BuiltinQuivers builtin_quivers();

}  // namespace qpa
