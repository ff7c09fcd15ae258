#include "grassproj/lattice_set.hpp"

#include "grassproj/error.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace grassproj {

LatticeSet::LatticeSet(int dim) : dim_(dim) {
    if (dim < 0) throw Error(ErrorCode::InvalidArgument, "negative lattice dimension");
}

LatticeSet::LatticeSet(int dim, std::vector<Point> elements) : dim_(dim), elements_(std::move(elements)) {
    if (dim < 0) throw Error(ErrorCode::InvalidArgument, "negative lattice dimension");
    for (const auto& p : elements_) {
        if (static_cast<int>(p.size()) != dim) {
            throw Error(ErrorCode::DimMismatch, "point of length " + std::to_string(p.size()) +
                                                    " in a set of dimension " + std::to_string(dim));
        }
    }
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool LatticeSet::contains(const Point& p) const {
    return std::binary_search(elements_.begin(), elements_.end(), p);
}

std::size_t LatticeSet::index_of(const Point& p) const {
    const auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || *it != p) return elements_.size();
    return static_cast<std::size_t>(it - elements_.begin());
}

LatticeSet set_union(const LatticeSet& a, const LatticeSet& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "union of sets of different dimension");
    std::vector<Point> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return LatticeSet(a.dim(), std::move(out));
}

LatticeSet set_intersection(const LatticeSet& a, const LatticeSet& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "intersection of sets of different dimension");
    std::vector<Point> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return LatticeSet(a.dim(), std::move(out));
}

bool is_subset(const LatticeSet& a, const LatticeSet& b) {
    return a.dim() == b.dim() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void write_lattice_set(std::ostream& out, const LatticeSet& z) {
    out << z.dim() << '\n';
    for (const auto& p : z) {
        for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
        out << '\n';
    }
}

namespace detail {

// Reads the remaining non-empty lines of `in` as points of length n.
std::vector<Point> read_points(std::istream& in, int n) {
    std::vector<Point> points;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        Point p;
        std::int64_t v;
        while (row >> v) p.push_back(v);
        if (!row.eof()) throw Error(ErrorCode::Format, "non-integer entry in line: " + line);
        if (static_cast<int>(p.size()) != n) {
            throw Error(ErrorCode::Format, "expected " + std::to_string(n) + " integers in line: " + line);
        }
        points.push_back(std::move(p));
    }
    const auto count = points.size();
    std::vector<Point> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::unique(sorted.begin(), sorted.end()) != sorted.end() || sorted.size() != count) {
        throw Error(ErrorCode::Format, "duplicate element");
    }
    return points;
}

}  // namespace detail

LatticeSet read_lattice_set(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw Error(ErrorCode::Format, "missing header line");
    std::istringstream h(header);
    int n = -1;
    std::string extra;
    if (!(h >> n) || n < 0 || (h >> extra)) throw Error(ErrorCode::Format, "header must be a single dimension");
    return LatticeSet(n, detail::read_points(in, n));
}

}  // namespace grassproj
