#include "epimu/simplex.hpp"

#include <algorithm>
#include <set>

#include "epimu/errors.hpp"

namespace epimu {

std::string ProcessSet::to_string() const
{
    std::string s = "{";
    bool first = true;
    for (auto a : *this) {
        if (!first)
            s += ",";
        s += std::to_string(a);
        first = false;
    }
    return s + "}";
}

std::vector<ProcessSet> nonempty_subsets(int n)
{
    std::vector<ProcessSet> out;
    for (std::uint32_t bits = 1; bits < (std::uint32_t{1} << (n + 1)); ++bits)
        out.emplace_back(bits);
    return out;
}

std::size_t Vertex::hash() const
{
    return value.hash() * 31 + static_cast<std::size_t>(color);
}

std::string Vertex::to_string() const
{
    return "(" + std::to_string(color) + "," + value.to_string() + ")";
}

Simplex::Simplex(std::vector<Vertex> vertexes) : vertexes_(std::move(vertexes))
{
    std::sort(vertexes_.begin(), vertexes_.end());
    for (std::size_t i = 1; i < vertexes_.size(); ++i)
        if (vertexes_[i - 1].color == vertexes_[i].color)
            throw PreconditionError("simplex has two vertexes of color " + std::to_string(vertexes_[i].color));
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto& v : vertexes_)
        h = (h ^ v.hash()) * 0x100000001b3ULL;
    hash_ = h;
}

const Vertex* Simplex::find(ProcessId a) const
{
    auto it = std::lower_bound(vertexes_.begin(), vertexes_.end(), a,
        [](const Vertex& v, ProcessId c) { return v.color < c; });
    if (it == vertexes_.end() || it->color != a)
        return nullptr;
    return &*it;
}

bool Simplex::contains(const Vertex& v) const
{
    const Vertex* w = find(v.color);
    return w && *w == v;
}

bool Simplex::is_face_of(const Simplex& other) const
{
    return std::all_of(vertexes_.begin(), vertexes_.end(), [&](const Vertex& v) { return other.contains(v); });
}

std::string Simplex::to_string() const
{
    std::string s = "{";
    for (std::size_t i = 0; i < vertexes_.size(); ++i) {
        if (i)
            s += ",";
        s += vertexes_[i].to_string();
    }
    return s + "}";
}

ProcessSet chi(const Simplex& s)
{
    ProcessSet out;
    for (const auto& v : s.vertexes())
        out.insert(v.color);
    return out;
}

const Value& view_of(ProcessId a, const Simplex& s)
{
    const Vertex* v = s.find(a);
    if (!v)
        throw ColorAbsentError(a);
    return v->value;
}

std::vector<Simplex> faces(const Simplex& s)
{
    auto vs = s.vertexes();
    std::vector<Simplex> out;
    out.reserve(std::size_t{1} << vs.size());
    for (std::size_t mask = 0; mask < (std::size_t{1} << vs.size()); ++mask) {
        std::vector<Vertex> face;
        for (std::size_t i = 0; i < vs.size(); ++i)
            if ((mask >> i) & 1)
                face.push_back(vs[i]);
        out.emplace_back(std::move(face));
    }
    return out;
}

Simplex intersection(const Simplex& x, const Simplex& y)
{
    std::vector<Vertex> common;
    for (const auto& v : x.vertexes())
        if (y.contains(v))
            common.push_back(v);
    return Simplex(std::move(common));
}

Complex::Complex(int n, std::vector<Simplex> simplexes) : n_(n)
{
    std::sort(simplexes.begin(), simplexes.end());
    simplexes.erase(std::unique(simplexes.begin(), simplexes.end()), simplexes.end());
    std::erase_if(simplexes, [](const Simplex& s) { return s.empty(); });

    std::size_t max_size = 0;
    for (const auto& s : simplexes)
        max_size = std::max(max_size, s.size());
    for (auto& s : simplexes) {
        bool maximal = true;
        if (s.size() < max_size) {
            for (const auto& t : simplexes)
                if (t.size() > s.size() && s.is_face_of(t)) {
                    maximal = false;
                    break;
                }
        }
        if (maximal)
            facets_.push_back(std::move(s));
    }
    facet_index_.reserve(facets_.size());
    for (std::size_t i = 0; i < facets_.size(); ++i)
        facet_index_.emplace(facets_[i], i);
}

std::ptrdiff_t Complex::facet_index(const Simplex& s) const
{
    auto it = facet_index_.find(s);
    return it == facet_index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

bool Complex::contains(const Simplex& s) const
{
    if (s.empty() || is_facet(s))
        return true;
    return std::any_of(facets_.begin(), facets_.end(), [&](const Simplex& f) { return s.is_face_of(f); });
}

bool Complex::is_pure_chromatic() const
{
    const ProcessSet all = ProcessSet::all(n_);
    return std::all_of(facets_.begin(), facets_.end(), [&](const Simplex& f) { return chi(f) == all; });
}

std::vector<Vertex> Complex::vertexes() const
{
    std::set<Vertex> vs;
    for (const auto& f : facets_)
        vs.insert(f.vertexes().begin(), f.vertexes().end());
    return {vs.begin(), vs.end()};
}

Complex cartesian_product(const Complex& c, const Complex& d)
{
    if (c.n() != d.n())
        throw ColorMismatchError("cartesian product of complexes over different color sets");
    std::vector<Simplex> product;
    product.reserve(c.num_facets() * d.num_facets());
    for (const auto& x : c.facets())
        for (const auto& y : d.facets()) {
            std::vector<Vertex> vs;
            for (const auto& u : x.vertexes())
                if (const Vertex* v = y.find(u.color))
                    vs.push_back({u.color, Value::pair(u.value, v->value)});
            product.emplace_back(std::move(vs));
        }
    return Complex(c.n(), std::move(product));
}

bool is_simplicial_map(const VertexMap& f, const Complex& c, const Complex& d)
{
    for (const auto& x : c.facets()) {
        std::vector<Vertex> image;
        for (const auto& v : x.vertexes()) {
            Vertex w = f(v);
            if (w.color != v.color)
                return false;
            image.push_back(std::move(w));
        }
        if (!d.contains(Simplex(std::move(image))))
            return false;
    }
    return true;
}

}  // namespace epimu
