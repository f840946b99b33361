#include "sheafkit/morphology.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace sheafkit {

BinaryImage::BinaryImage(int width, int height) : w_(width), h_(height) {
    if (width < 0 || height < 0) throw std::invalid_argument("negative image size");
    px_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), false);
}

BinaryImage::BinaryImage(int width, int height, const std::vector<Point>& foreground) : BinaryImage(width, height) {
    for (auto p : foreground) set(p);
}

BinaryImage BinaryImage::full(int width, int height) {
    BinaryImage img(width, height);
    img.px_.assign(img.px_.size(), true);
    return img;
}

void BinaryImage::set(Point p, bool v) {
    if (!in_bounds(p))
        throw std::out_of_range("pixel (" + std::to_string(p.x) + "," + std::to_string(p.y) + ") outside " +
                                std::to_string(w_) + "x" + std::to_string(h_) + " image");
    px_[idx(p)] = v;
}

std::vector<Point> BinaryImage::foreground() const {
    std::vector<Point> out;
    for (int y = 0; y < h_; ++y)
        for (int x = 0; x < w_; ++x)
            if (px_[idx({x, y})]) out.push_back({x, y});
    return out;
}

std::size_t BinaryImage::count() const { return static_cast<std::size_t>(std::count(px_.begin(), px_.end(), true)); }

void BinaryImage::same_grid(const BinaryImage& o) const {
    if (w_ != o.w_ || h_ != o.h_) throw std::invalid_argument("images live on different grids");
}

bool BinaryImage::subset_of(const BinaryImage& o) const {
    same_grid(o);
    for (std::size_t i = 0; i < px_.size(); ++i)
        if (px_[i] && !o.px_[i]) return false;
    return true;
}

BinaryImage BinaryImage::operator|(const BinaryImage& o) const {
    same_grid(o);
    BinaryImage r = *this;
    for (std::size_t i = 0; i < px_.size(); ++i) r.px_[i] = px_[i] || o.px_[i];
    return r;
}

BinaryImage BinaryImage::operator&(const BinaryImage& o) const {
    same_grid(o);
    BinaryImage r = *this;
    for (std::size_t i = 0; i < px_.size(); ++i) r.px_[i] = px_[i] && o.px_[i];
    return r;
}

StructuringElement::StructuringElement(std::vector<Point> offsets) : offsets_(std::move(offsets)) {
    if (offsets_.empty()) throw std::invalid_argument("structuring element must be nonempty");
    std::sort(offsets_.begin(), offsets_.end());
    offsets_.erase(std::unique(offsets_.begin(), offsets_.end()), offsets_.end());
}

BinaryImage dilate(const BinaryImage& x, const StructuringElement& b) {
    BinaryImage out(x.width(), x.height());
    for (auto p : x.foreground())
        for (auto o : b.offsets()) {
            Point q{p.x + o.x, p.y + o.y};
            if (out.in_bounds(q)) out.set(q);
        }
    return out;
}

BinaryImage erode(const BinaryImage& x, const StructuringElement& b) {
    BinaryImage out(x.width(), x.height());
    for (int py = 0; py < x.height(); ++py)
        for (int px = 0; px < x.width(); ++px) {
            bool inside = true;
            for (auto o : b.offsets()) {
                Point q{px + o.x, py + o.y};
                if (x.in_bounds(q) && !x.at(q)) {
                    inside = false;
                    break;
                }
            }
            if (inside) out.set({px, py});
        }
    return out;
}

BinaryImage open_close(const BinaryImage& x, const StructuringElement& b, Filter which) {
    return which == Filter::open ? dilate(erode(x, b), b) : erode(dilate(x, b), b);
}

CompositeFilters composite_filter_lattice(const BinaryImage& x, const StructuringElement& b, int max_word) {
    auto phi = [&](const BinaryImage& i) { return opening(i, b); };
    auto kappa = [&](const BinaryImage& i) { return closing(i, b); };

    CompositeFilters r;
    r.phi = phi(x);
    r.kappa = kappa(x);
    r.kappa_phi = kappa(r.phi);
    r.phi_kappa = phi(r.kappa);
    r.phi_kappa_phi = phi(r.kappa_phi);
    r.kappa_phi_kappa = kappa(r.phi_kappa);

    auto fail = [&](std::string m) { r.failures.push_back(std::move(m)); };

    r.idempotent = true;
    auto idem = [&](const BinaryImage& once, const std::function<BinaryImage(const BinaryImage&)>& f, const char* name) {
        if (!(f(once) == once)) {
            r.idempotent = false;
            fail(std::string(name) + " is not idempotent");
        }
    };
    idem(r.kappa_phi, [&](const BinaryImage& i) { return kappa(phi(i)); }, "kappa.phi");
    idem(r.phi_kappa, [&](const BinaryImage& i) { return phi(kappa(i)); }, "phi.kappa");
    idem(r.phi_kappa_phi, [&](const BinaryImage& i) { return phi(kappa(phi(i))); }, "phi.kappa.phi");
    idem(r.kappa_phi_kappa, [&](const BinaryImage& i) { return kappa(phi(kappa(i))); }, "kappa.phi.kappa");

    r.chain = true;
    auto le = [&](const BinaryImage& a, const BinaryImage& c, const char* what) {
        if (!a.subset_of(c)) {
            r.chain = false;
            fail(std::string("chain breaks at ") + what);
        }
    };
    le(r.phi, r.phi_kappa_phi, "phi <= phi.kappa.phi");
    le(r.phi_kappa_phi, r.kappa_phi, "phi.kappa.phi <= kappa.phi");
    le(r.phi_kappa_phi, r.phi_kappa, "phi.kappa.phi <= phi.kappa");
    le(r.kappa_phi, r.kappa_phi_kappa, "kappa.phi <= kappa.phi.kappa");
    le(r.phi_kappa, r.kappa_phi_kappa, "phi.kappa <= kappa.phi.kappa");
    le(r.kappa_phi_kappa, r.kappa, "kappa.phi.kappa <= kappa");

    const std::vector<const BinaryImage*> known{&r.phi, &r.kappa, &r.kappa_phi, &r.phi_kappa, &r.phi_kappa_phi,
                                                &r.kappa_phi_kappa};
    r.closed = true;
    std::vector<std::pair<std::string, BinaryImage>> frontier{{"", x}};
    for (int len = 1; len <= max_word; ++len) {
        std::vector<std::pair<std::string, BinaryImage>> next;
        for (const auto& [word, img] : frontier) {
            next.emplace_back("p" + word, phi(img));
            next.emplace_back("k" + word, kappa(img));
        }
        for (const auto& [word, img] : next)
            if (std::none_of(known.begin(), known.end(), [&](auto k) { return *k == img; })) {
                r.closed = false;
                fail("word " + word + " gives a seventh filter");
            }
        frontier = std::move(next);
    }
    return r;
}

// Grayscale ------------------------------------------------------------------

ExtendedRational ExtendedRational::parse(const std::string& s) {
    if (s == "-inf") return neg_inf();
    if (s == "inf" || s == "+inf") return pos_inf();
    return ExtendedRational(Rational::parse(s));
}

const Rational& ExtendedRational::value() const {
    if (!finite()) throw std::domain_error("infinite value has no rational part");
    return v_;
}

std::string ExtendedRational::str() const {
    switch (kind_) {
    case Kind::neg_inf: return "-inf";
    case Kind::pos_inf: return "inf";
    default: return v_.str();
    }
}

std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (a.finite()) return a.v_ <=> b.v_;
    return std::strong_ordering::equal;
}

GrayscaleSignal flat_filter(const GrayscaleSignal& f, const std::vector<int>& window, FlatOp which) {
    if (window.empty()) throw std::invalid_argument("flat window must be nonempty");
    const long n = static_cast<long>(f.size());
    GrayscaleSignal out;
    for (long x = 0; x < n; ++x) {
        ExtendedRational acc = which == FlatOp::dilate ? ExtendedRational::neg_inf() : ExtendedRational::pos_inf();
        for (int b : window) {
            long y = which == FlatOp::dilate ? x - b : x + b;
            if (y < 0 || y >= n) continue;
            const auto& v = f[static_cast<std::size_t>(y)];
            if (which == FlatOp::dilate ? v > acc : v < acc) acc = v;
        }
        out.push_back(acc);
    }
    return out;
}

// Lattice view ---------------------------------------------------------------

std::string image_label(const BinaryImage& x) {
    std::string s;
    for (int y = 0; y < x.height(); ++y)
        for (int px = 0; px < x.width(); ++px) s += x.at({px, y}) ? '1' : '0';
    return s;
}

BinaryImage image_from_label(int width, int height, const std::string& label) {
    if (label.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument("image label has the wrong length");
    BinaryImage img(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (label[static_cast<std::size_t>(y * width + x)] == '1') img.set({x, y});
    return img;
}

FinitePoset image_lattice(int width, int height) {
    const int n = width * height;
    if (n > 8) throw std::invalid_argument("image lattice limited to 8 pixels");
    std::vector<Label> labels;
    for (unsigned m = 0; m < (1u << n); ++m) {
        std::string s(static_cast<std::size_t>(n), '0');
        for (int i = 0; i < n; ++i)
            if (m >> i & 1) s[static_cast<std::size_t>(i)] = '1';
        labels.push_back(s);
    }
    return FinitePoset::from_order(labels, [&](std::size_t a, std::size_t b) { return (a & ~b) == 0; });
}

BinaryImage parse_bitmap(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(line);
    }
    if (rows.empty()) throw std::invalid_argument("bitmap has no rows");
    const int w = static_cast<int>(rows[0].size());
    BinaryImage img(w, static_cast<int>(rows.size()));
    for (std::size_t y = 0; y < rows.size(); ++y) {
        if (static_cast<int>(rows[y].size()) != w)
            throw std::invalid_argument("bitmap row " + std::to_string(y) + " has length " +
                                        std::to_string(rows[y].size()) + ", expected " + std::to_string(w));
        for (int x = 0; x < w; ++x) {
            char c = rows[y][static_cast<std::size_t>(x)];
            if (c != '0' && c != '1') throw std::invalid_argument(std::string("bitmap character '") + c + "'");
            if (c == '1') img.set({x, static_cast<int>(y)});
        }
    }
    return img;
}

std::string to_bitmap(const BinaryImage& x) {
    std::string s;
    for (int y = 0; y < x.height(); ++y) {
        for (int px = 0; px < x.width(); ++px) s += x.at({px, y}) ? '1' : '0';
        s += '\n';
    }
    return s;
}

} // namespace sheafkit
