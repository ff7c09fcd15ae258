#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace grassproj {

/// A point of Z^n.
using Point = std::vector<std::int64_t>;

struct PointHash {
    std::size_t operator()(const Point& p) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ p.size();
        for (auto v : p) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

/// Finite subset of Z^n held as a sorted vector of distinct points
/// (lexicographic order), so iteration order is canonical.
class LatticeSet {
public:
    explicit LatticeSet(int dim = 1);

    /// Sorts and removes duplicates. Throws DimMismatch if a point has the
    /// wrong length.
    LatticeSet(int dim, std::vector<Point> elements);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
    [[nodiscard]] bool empty() const noexcept { return elements_.empty(); }
    [[nodiscard]] const std::vector<Point>& elements() const noexcept { return elements_; }
    [[nodiscard]] const Point& operator[](std::size_t i) const { return elements_[i]; }
    [[nodiscard]] bool contains(const Point& p) const;

    /// Index of p in elements(), or size() if absent.
    [[nodiscard]] std::size_t index_of(const Point& p) const;

    [[nodiscard]] auto begin() const noexcept { return elements_.begin(); }
    [[nodiscard]] auto end() const noexcept { return elements_.end(); }

    friend bool operator==(const LatticeSet&, const LatticeSet&) = default;

private:
    int dim_;
    std::vector<Point> elements_;
};

LatticeSet set_union(const LatticeSet& a, const LatticeSet& b);
LatticeSet set_intersection(const LatticeSet& a, const LatticeSet& b);
bool is_subset(const LatticeSet& a, const LatticeSet& b);

/// Text format: first line "n", then one element per line as n integers.
void write_lattice_set(std::ostream& out, const LatticeSet& z);

/// Throws Error(Format) on malformed input or duplicate elements.
LatticeSet read_lattice_set(std::istream& in);

}  // namespace grassproj
