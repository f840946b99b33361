/**
 * @file morphology.hpp
 * Binary morphology on a bounded grid and flat 1-D grayscale filters.
 *
 * Dilation clips to the grid. Erosion ignores translate points that fall
 * outside the grid, which makes it the exact right adjoint of clipped
 * dilation on the lattice of subsets of the grid.
 */
#pragma once

#include "sheafkit/galois.hpp"
#include "sheafkit/poset.hpp"
#include "sheafkit/rational.hpp"

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace sheafkit {

struct Point {
    int x = 0, y = 0;
    friend auto operator<=>(const Point&, const Point&) = default;
};

class BinaryImage {
public:
    BinaryImage() = default;
    BinaryImage(int width, int height);
    /// Throws std::out_of_range for points outside the grid.
    BinaryImage(int width, int height, const std::vector<Point>& foreground);
    static BinaryImage full(int width, int height);

    int width() const { return w_; }
    int height() const { return h_; }
    bool in_bounds(Point p) const { return p.x >= 0 && p.y >= 0 && p.x < w_ && p.y < h_; }
    bool at(Point p) const { return in_bounds(p) && px_[idx(p)]; }
    void set(Point p, bool v = true);
    std::vector<Point> foreground() const;
    std::size_t count() const;

    bool subset_of(const BinaryImage& o) const;
    BinaryImage operator|(const BinaryImage& o) const;
    BinaryImage operator&(const BinaryImage& o) const;

    friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

private:
    std::size_t idx(Point p) const { return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(w_) + static_cast<std::size_t>(p.x); }
    void same_grid(const BinaryImage& o) const;
    int w_ = 0, h_ = 0;
    std::vector<bool> px_;
};

class StructuringElement {
public:
    /// Throws std::invalid_argument when empty; duplicates are merged.
    explicit StructuringElement(std::vector<Point> offsets);
    const std::vector<Point>& offsets() const { return offsets_; }

private:
    std::vector<Point> offsets_;
};

BinaryImage dilate(const BinaryImage& x, const StructuringElement& b);
BinaryImage erode(const BinaryImage& x, const StructuringElement& b);

enum class Filter { open, close };
BinaryImage open_close(const BinaryImage& x, const StructuringElement& b, Filter which);
inline BinaryImage opening(const BinaryImage& x, const StructuringElement& b) { return open_close(x, b, Filter::open); }
inline BinaryImage closing(const BinaryImage& x, const StructuringElement& b) { return open_close(x, b, Filter::close); }

struct CompositeFilters {
    BinaryImage phi, kappa, kappa_phi, phi_kappa, phi_kappa_phi, kappa_phi_kappa;
    bool idempotent = false;  // the four composites
    bool chain = false;       // phi <= phi.kappa.phi <= {kappa.phi, phi.kappa} <= kappa.phi.kappa <= kappa
    bool closed = false;      // every word in phi, kappa lands on one of the six
    std::vector<std::string> failures;
};

/// Words up to `max_word` letters are checked for closure.
CompositeFilters composite_filter_lattice(const BinaryImage& x, const StructuringElement& b, int max_word = 6);

// Grayscale ------------------------------------------------------------------

class ExtendedRational {
public:
    enum class Kind { neg_inf, finite, pos_inf };
    ExtendedRational() = default;
    ExtendedRational(Rational v) : kind_(Kind::finite), v_(std::move(v)) {}
    ExtendedRational(int v) : kind_(Kind::finite), v_(v) {}
    static ExtendedRational neg_inf() { return ExtendedRational(Kind::neg_inf); }
    static ExtendedRational pos_inf() { return ExtendedRational(Kind::pos_inf); }
    /// "-inf", "inf" or any Rational::parse text.
    static ExtendedRational parse(const std::string& s);

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ == Kind::finite; }
    const Rational& value() const;
    std::string str() const;

    friend bool operator==(const ExtendedRational&, const ExtendedRational&) = default;
    friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b);

private:
    explicit ExtendedRational(Kind k) : kind_(k) {}
    Kind kind_ = Kind::finite;
    Rational v_;
};

typedef std::vector<ExtendedRational> GrayscaleSignal;

enum class FlatOp { dilate, erode };

/// dilate: sup over b of f(x - b), reading -inf off the ends.
/// erode:  inf over b of f(x + b), reading +inf off the ends.
GrayscaleSignal flat_filter(const GrayscaleSignal& f, const std::vector<int>& window, FlatOp which);

// The subset lattice of a grid, for feeding morphology into the order tools.

/// "0110.." one character per pixel in row-major order.
std::string image_label(const BinaryImage& x);
BinaryImage image_from_label(int width, int height, const std::string& label);
/// All 2^(w*h) images ordered by inclusion; at most 8 pixels.
FinitePoset image_lattice(int width, int height);
/// The image of every lattice element under `op`, as an index map.
template <typename Op>
IndexMap lattice_map(const FinitePoset& lattice, int width, int height, Op op) {
    IndexMap out(lattice.size());
    for (std::size_t i = 0; i < lattice.size(); ++i)
        out[i] = lattice.index(image_label(op(image_from_label(width, height, lattice.label(i)))));
    return out;
}

// Text bitmaps: one row per line, '0'/'1' per pixel, row 0 first.
BinaryImage parse_bitmap(const std::string& text);
std::string to_bitmap(const BinaryImage& x);

} // namespace sheafkit
