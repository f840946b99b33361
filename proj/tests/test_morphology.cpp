#include <catch_amalgamated.hpp>

#include "sheafkit/morphology.hpp"

#include <set>

using namespace sheafkit;

namespace {

BinaryImage from_mask(int w, int h, unsigned m) {
    BinaryImage img(w, h);
    for (int i = 0; i < w * h; ++i)
        if (m >> i & 1) img.set({i % w, i / w});
    return img;
}

// Minkowski sum of point sets, then clipped; written without the library loop.
std::set<Point> oracle_dilate(const BinaryImage& x, const std::vector<Point>& b) {
    std::set<Point> out;
    for (auto p : x.foreground())
        for (auto o : b)
            if (x.in_bounds({p.x + o.x, p.y + o.y})) out.insert({p.x + o.x, p.y + o.y});
    return out;
}

std::set<Point> as_set(const BinaryImage& x) {
    auto f = x.foreground();
    return {f.begin(), f.end()};
}

const std::vector<std::vector<Point>> kElements{
    {{0, 0}},
    {{0, 0}, {1, 0}},
    {{0, 0}, {0, 1}, {1, 1}},
    {{-1, 0}, {1, 0}},
};

} // namespace

TEST_CASE("dilate", "[morphology]") {
    StructuringElement unit({{0, 0}});
    BinaryImage x(4, 1, {{0, 0}, {1, 0}});
    CHECK(dilate(x, unit) == x);
    StructuringElement bar({{0, 0}, {1, 0}});
    CHECK(dilate(x, bar) == BinaryImage(4, 1, {{0, 0}, {1, 0}, {2, 0}}));
    CHECK(dilate(BinaryImage(4, 1), bar) == BinaryImage(4, 1));
    // clipped at the right edge
    CHECK(dilate(BinaryImage(4, 1, {{3, 0}}), bar) == BinaryImage(4, 1, {{3, 0}}));
    CHECK_THROWS_AS(StructuringElement({}), std::invalid_argument);
}

TEST_CASE("erode", "[morphology]") {
    StructuringElement unit({{0, 0}});
    StructuringElement bar({{0, 0}, {1, 0}});
    BinaryImage x(4, 1, {{0, 0}, {1, 0}});
    CHECK(erode(x, unit) == x);
    CHECK(erode(x, bar) == BinaryImage(4, 1, {{0, 0}}));
    // out-of-grid translate points are ignored, so the full grid is fixed
    CHECK(erode(BinaryImage::full(4, 1), bar) == BinaryImage::full(4, 1));
    CHECK(erode(BinaryImage::full(3, 2), StructuringElement({{5, 5}})) == BinaryImage::full(3, 2));
}

TEST_CASE("erode matches the brute-force right adjoint of dilate", "[morphology][property]") {
    for (const auto& offs : kElements) {
        StructuringElement b(offs);
        for (unsigned y = 0; y < 64; ++y) {
            auto img = from_mask(3, 2, y);
            std::set<Point> largest;
            for (int i = 0; i < 6; ++i) {
                BinaryImage single(3, 2, {{i % 3, i / 3}});
                auto d = oracle_dilate(single, offs);
                bool inside = true;
                for (auto p : d) inside = inside && img.at(p);
                if (inside) largest.insert({i % 3, i / 3});
            }
            CHECK(as_set(erode(img, b)) == largest);
            CHECK(as_set(dilate(img, b)) == oracle_dilate(img, offs));
        }
    }
}

TEST_CASE("adjunction, distributivity and monotonicity on the 3x2 grid", "[morphology][property]") {
    for (const auto& offs : kElements) {
        StructuringElement b(offs);
        for (unsigned xm = 0; xm < 64; ++xm)
            for (unsigned ym = 0; ym < 64; ++ym) {
                auto x = from_mask(3, 2, xm), y = from_mask(3, 2, ym);
                REQUIRE(dilate(x, b).subset_of(y) == x.subset_of(erode(y, b)));
                REQUIRE(dilate(x | y, b) == (dilate(x, b) | dilate(y, b)));
                REQUIRE(erode(x & y, b) == (erode(x, b) & erode(y, b)));
                if (x.subset_of(y)) {
                    REQUIRE(dilate(x, b).subset_of(dilate(y, b)));
                    REQUIRE(erode(x, b).subset_of(erode(y, b)));
                }
            }
    }
}

TEST_CASE("opening and closing", "[morphology]") {
    StructuringElement unit({{0, 0}});
    BinaryImage x(3, 2, {{0, 0}, {2, 1}});
    CHECK(opening(x, unit) == x);
    CHECK(closing(x, unit) == x);

    StructuringElement bar({{0, 0}, {1, 0}});
    BinaryImage noise(4, 1, {{1, 0}});
    CHECK(opening(noise, bar) == BinaryImage(4, 1));

    for (const auto& offs : kElements) {
        StructuringElement b(offs);
        for (unsigned m = 0; m < 64; ++m) {
            auto img = from_mask(3, 2, m);
            auto o = opening(img, b), c = closing(img, b);
            CHECK(o.subset_of(img));
            CHECK(img.subset_of(c));
            CHECK(opening(o, b) == o);
            CHECK(closing(c, b) == c);
        }
    }
}

TEST_CASE("composite filters", "[morphology]") {
    auto r = composite_filter_lattice(BinaryImage(3, 2, {{0, 0}, {2, 1}}), StructuringElement({{0, 0}}));
    CHECK(r.phi == r.kappa);
    CHECK(r.phi == BinaryImage(3, 2, {{0, 0}, {2, 1}}));
    CHECK(r.kappa_phi_kappa == r.phi);

    StructuringElement bar({{0, 0}, {1, 0}});
    for (unsigned m = 0; m < 64; ++m) {
        auto x = from_mask(3, 2, m);
        auto c = composite_filter_lattice(x, bar);
        INFO(to_bitmap(x));
        CHECK(c.idempotent);
        CHECK(c.chain);
        CHECK(c.closed);
        CHECK(c.failures.empty());
        CHECK(closing(opening(closing(opening(x, bar), bar), bar), bar) == c.kappa_phi);
    }
}

TEST_CASE("flat grayscale filters", "[morphology]") {
    GrayscaleSignal f{1, 5, 2};
    CHECK(flat_filter(f, {0}, FlatOp::dilate) == f);
    CHECK(flat_filter(f, {0}, FlatOp::erode) == f);
    CHECK(flat_filter(f, {-1, 0, 1}, FlatOp::dilate) == GrayscaleSignal{5, 5, 5});
    // the right end only sees f(1) = 5 and f(2) = 2
    CHECK(flat_filter(f, {-1, 0, 1}, FlatOp::erode) == GrayscaleSignal{1, 1, 2});
    CHECK(flat_filter(GrayscaleSignal{1, 5, 2, 1}, {-1, 0, 1}, FlatOp::erode) == GrayscaleSignal{1, 1, 1, 1});
    // asymmetric window: dilation reads f(x - 1)
    auto d = flat_filter(f, {1}, FlatOp::dilate);
    CHECK(d == GrayscaleSignal{ExtendedRational::neg_inf(), 1, 5});
    auto e = flat_filter(f, {1}, FlatOp::erode);
    CHECK(e == GrayscaleSignal{5, 2, ExtendedRational::pos_inf()});
    CHECK(ExtendedRational::parse("-inf") < ExtendedRational::parse("-1000"));
    CHECK(ExtendedRational::parse("7.5").value() == Rational(15, 2));
}

TEST_CASE("flat dilation is left adjoint to flat erosion", "[morphology][property]") {
    const std::vector<ExtendedRational> vals{ExtendedRational::neg_inf(), 0, 1, 2, ExtendedRational::pos_inf()};
    const std::vector<std::vector<int>> windows{{0}, {-1, 0, 1}, {1}, {0, 2}};
    auto le = [](const GrayscaleSignal& a, const GrayscaleSignal& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    };
    for (const auto& w : windows)
        for (int fi = 0; fi < 125; ++fi)
            for (int gi = 0; gi < 125; ++gi) {
                GrayscaleSignal f{vals[static_cast<std::size_t>(fi % 5)], vals[static_cast<std::size_t>(fi / 5 % 5)],
                                  vals[static_cast<std::size_t>(fi / 25)]};
                GrayscaleSignal g{vals[static_cast<std::size_t>(gi % 5)], vals[static_cast<std::size_t>(gi / 5 % 5)],
                                  vals[static_cast<std::size_t>(gi / 25)]};
                REQUIRE(le(flat_filter(f, w, FlatOp::dilate), g) == le(f, flat_filter(g, w, FlatOp::erode)));
            }
}

TEST_CASE("bitmap text round trip", "[morphology]") {
    auto img = parse_bitmap("010\n110\n");
    CHECK(img.width() == 3);
    CHECK(img.height() == 2);
    CHECK(img.at({1, 0}));
    CHECK(img.at({0, 1}));
    CHECK_FALSE(img.at({0, 0}));
    CHECK(to_bitmap(img) == "010\n110\n");
    CHECK_THROWS_AS(parse_bitmap("01\n1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_bitmap("012\n"), std::invalid_argument);
}

TEST_CASE("image lattice labels", "[morphology]") {
    auto lat = image_lattice(3, 2);
    CHECK(lat.size() == 64);
    BinaryImage x(3, 2, {{1, 0}, {0, 1}});
    CHECK(image_label(x) == "010100");
    CHECK(image_from_label(3, 2, "010100") == x);
    CHECK(lat.leq("010100", "110100"));
    CHECK(lat.is_lattice());
}
