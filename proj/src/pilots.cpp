#include "mimocap/pilots.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

#include "mimocap/kernels.hpp"

namespace mimocap {

std::string_view name(PilotScheme scheme) {
  return scheme == PilotScheme::reused_sets ? "reused" : "different";
}

PilotScheme parse_pilot_scheme(std::string_view text) {
  if (text == "reused") return PilotScheme::reused_sets;
  if (text == "different") return PilotScheme::different_sets;
  throw std::invalid_argument("unknown pilot scheme '" + std::string(text) +
                              "' (expected reused or different)");
}

std::string_view name(PilotModel model) {
  return model == PilotModel::projection ? "projection" : "haar_book";
}

PilotModel parse_pilot_model(std::string_view text) {
  if (text == "projection") return PilotModel::projection;
  if (text == "haar_book") return PilotModel::haar_book;
  throw std::invalid_argument("unknown pilot model '" + std::string(text) +
                              "' (expected projection or haar_book)");
}

Eigen::MatrixXcd haar_from_gaussian(const Eigen::MatrixXcd& gaussian) {
  if (gaussian.rows() != gaussian.cols()) throw std::invalid_argument("haar: matrix must be square");
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gaussian);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const double mag = std::abs(r(i, i));
    const cplx phase = mag > 0.0 ? r(i, i) / mag : cplx{1.0, 0.0};
    q.col(i) *= phase;
  }
  return q;
}

bool is_unitary(const Eigen::MatrixXcd& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return (gram - eye).cwiseAbs().maxCoeff() <= tol;
}

double cross_correlation(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("cross_correlation: pilot lengths differ (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  return std::norm(kernels::cdotc(a, b));
}

double cross_correlation(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return cross_correlation(std::span<const cplx>(a.data(), static_cast<std::size_t>(a.size())),
                           std::span<const cplx>(b.data(), static_cast<std::size_t>(b.size())));
}

void write_pilot_book_csv(const PilotBook& book, std::ostream& out) {
  out << "cell,column,row,re,im\n";
  for (std::size_t c = 0; c < book.matrices.size(); ++c) {
    const auto& m = book.matrices[c];
    for (Eigen::Index col = 0; col < m.cols(); ++col)
      for (Eigen::Index row = 0; row < m.rows(); ++row)
        out << c << ',' << col << ',' << row << ',' << m(row, col).real() << ','
            << m(row, col).imag() << '\n';
  }
}

}  // namespace mimocap
