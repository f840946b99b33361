#include "sheafkit/linalg.hpp"

#include <sstream>

namespace sheafkit {

RationalMatrix zeros(Eigen::Index rows, Eigen::Index cols) {
    return RationalMatrix::Constant(rows, cols, Rational(0));
}

RationalMatrix identity(Eigen::Index n) {
    RationalMatrix m = zeros(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
}

RationalMatrix from_rows(std::initializer_list<std::initializer_list<Rational>> rows) {
    Eigen::Index r = static_cast<Eigen::Index>(rows.size());
    Eigen::Index c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
    RationalMatrix m(r, c);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Eigen::Index>(row.size()) != c) throw DimensionError("from_rows: ragged rows");
        Eigen::Index j = 0;
        for (const auto& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

RationalVector vec(std::initializer_list<Rational> entries) {
    RationalVector v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (const auto& e : entries) v(i++) = e;
    return v;
}

std::string to_string(const RationalMatrix& m) {
    std::ostringstream os;
    os << '[';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

} // namespace sheafkit
