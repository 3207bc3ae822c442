#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <iosfwd>
#include <numeric>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace mimocap {

using cplx = std::complex<double>;

enum class PilotScheme { reused_sets, different_sets };

std::string_view name(PilotScheme scheme);
PilotScheme parse_pilot_scheme(std::string_view text);

/// How samplers obtain pilot cross-correlations.
///  haar_book  - draw a full PilotBook per trial and take inner products.
///  projection - draw the correlations of the tagged pilot directly; for a
///               fixed unit vector and an independent Haar unitary the
///               squared projections onto its columns are Dirichlet(1,...,1).
enum class PilotModel { projection, haar_book };

std::string_view name(PilotModel model);
PilotModel parse_pilot_model(std::string_view text);

struct PilotBook {
  int sequence_length = 0;
  /// One unitary per cell; columns are pilot sequences.
  std::vector<Eigen::MatrixXcd> matrices;
  /// assignment[cell][user] = column index.
  std::vector<std::vector<int>> assignment;

  Eigen::VectorXcd pilot(std::size_t cell, std::size_t user) const {
    return matrices[cell].col(assignment[cell][user]);
  }
};

/// Haar unitary from a matrix of iid CN(0,1) entries: Q of a QR
/// decomposition with the phases of diag(R) pushed into Q.
Eigen::MatrixXcd haar_from_gaussian(const Eigen::MatrixXcd& gaussian);

template <class Rng>
Eigen::MatrixXcd haar_unitary(int size, Rng& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd g(size, size);
  for (int c = 0; c < size; ++c)
    for (int r = 0; r < size; ++r) g(r, c) = {n(rng), n(rng)};
  return haar_from_gaussian(g);
}

/// Unitary to within `tol` in max-abs of U^H U - I.
bool is_unitary(const Eigen::MatrixXcd& u, double tol = 1e-10);

template <class Rng>
std::vector<int> random_permutation(int size, Rng& rng) {
  std::vector<int> p(static_cast<std::size_t>(size));
  std::iota(p.begin(), p.end(), 0);
  // Fisher-Yates with explicit uniform draws; std::shuffle's draw sequence is
  // implementation-defined.
  for (int i = size - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(pick(rng))]);
  }
  return p;
}

/// ReusedSets: one unitary (Haar, or identity when `identity_for_reused`) and
/// one column permutation shared by every cell, so same-index users share a
/// pilot. DifferentSets: independent Haar unitary and permutation per cell.
template <class Rng>
PilotBook generate_pilot_book(PilotScheme scheme, int sequence_length, std::size_t cell_count,
                              Rng& rng, bool identity_for_reused = false) {
  if (sequence_length < 1) throw std::invalid_argument("pilot sequence length must be >= 1");
  PilotBook book;
  book.sequence_length = sequence_length;
  book.matrices.reserve(cell_count);
  book.assignment.reserve(cell_count);
  if (scheme == PilotScheme::reused_sets) {
    const Eigen::MatrixXcd u = identity_for_reused
                                   ? Eigen::MatrixXcd::Identity(sequence_length, sequence_length)
                                   : haar_unitary(sequence_length, rng);
    const auto perm = random_permutation(sequence_length, rng);
    for (std::size_t c = 0; c < cell_count; ++c) {
      book.matrices.push_back(u);
      book.assignment.push_back(perm);
    }
  } else {
    for (std::size_t c = 0; c < cell_count; ++c) {
      book.matrices.push_back(haar_unitary(sequence_length, rng));
      book.assignment.push_back(random_permutation(sequence_length, rng));
    }
  }
  return book;
}

/// |<a, b>|^2. Throws std::invalid_argument on a length mismatch.
double cross_correlation(std::span<const cplx> a, std::span<const cplx> b);
double cross_correlation(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

/// First `users` squared projections of a fixed unit vector onto the columns
/// of an independent Haar unitary of size `sequence_length`.
template <class Rng>
std::vector<double> projection_weights(int sequence_length, int users, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> draws(static_cast<std::size_t>(sequence_length));
  double total = 0.0;
  for (auto& d : draws) total += (d = e(rng));
  draws.resize(static_cast<std::size_t>(users));
  for (auto& d : draws) d /= total;
  return draws;
}

/// Pilot weights seen by the tagged user (user 0 of cell 0):
/// weights[cell][user] = |<psi_tagged, psi_{cell,user}>|^2, with
/// weights[0][0] = 1 and every other own-cell entry 0.
template <class Rng>
std::vector<std::vector<double>> contamination_weights(PilotScheme scheme, PilotModel model,
                                                       int sequence_length, int users,
                                                       std::size_t cell_count, Rng& rng) {
  if (users < 1 || users > sequence_length)
    throw std::invalid_argument("users per cell must lie in [1, pilot sequence length]");
  std::vector<std::vector<double>> w(cell_count, std::vector<double>(static_cast<std::size_t>(users), 0.0));
  if (model == PilotModel::haar_book) {
    const auto book = generate_pilot_book(scheme, sequence_length, cell_count, rng);
    const Eigen::VectorXcd tagged = book.pilot(0, 0);
    for (std::size_t c = 0; c < cell_count; ++c)
      for (int u = 0; u < users; ++u)
        w[c][static_cast<std::size_t>(u)] = cross_correlation(tagged, book.pilot(c, static_cast<std::size_t>(u)));
    // Own-cell orthogonality is exact by construction; clear the rounding.
    for (int u = 1; u < users; ++u) w[0][static_cast<std::size_t>(u)] = 0.0;
    w[0][0] = 1.0;
    return w;
  }
  w[0][0] = 1.0;
  for (std::size_t c = 1; c < cell_count; ++c) {
    if (scheme == PilotScheme::reused_sets) {
      w[c][0] = 1.0;
    } else {
      w[c] = projection_weights(sequence_length, users, rng);
    }
  }
  return w;
}

/// CSV dump: cell,column,row,re,im
void write_pilot_book_csv(const PilotBook& book, std::ostream& out);

}  // namespace mimocap
