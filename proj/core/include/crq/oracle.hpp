#pragma once

// Exact numerical cross-check for the closed forms: the joint (Q_p, Q_s) and
// (Q_p, Q_sp) chains at slot boundaries, truncated to a square lattice and
// solved for their stationary distribution by power iteration.

#include "crq/model.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace crq::oracle {

enum class ChainPair {
  primary_secondary,  ///< (Q_p, Q_s)
  primary_relay,      ///< (Q_p, Q_sp)
};

std::string_view to_string(ChainPair pair);
ChainPair parse_chain_pair(std::string_view name);

struct ChainSpec {
  ChannelProfile channel;
  Policy policy;
  OperatingPoint point;
  ChainPair pair = ChainPair::primary_secondary;
  std::size_t truncation = 400;  ///< lattice size per dimension
  double tolerance = 1e-12;      ///< max-norm stationarity residual
  std::size_t max_iterations = 200'000;
  double max_boundary_mass = 1e-6;

  /// Throws InvalidArgument unless truncation >= 4 and tolerance > 0.
  void validate() const;
};

/// Row-stochastic sparse kernel over states (first, second), indexed
/// first * truncation + second. Transitions past the lattice edge stay on it.
class TransitionModel {
public:
  struct Entry {
    std::uint32_t to;
    double probability;
  };

  std::size_t truncation() const noexcept { return truncation_; }
  std::size_t states() const noexcept { return truncation_ * truncation_; }
  std::size_t index(std::size_t first, std::size_t second) const noexcept {
    return first * truncation_ + second;
  }

  std::span<const Entry> row(std::size_t state) const {
    return {entries_.data() + offsets_[state], entries_.data() + offsets_[state + 1]};
  }

  /// One-step probability between two lattice states (0 when absent).
  double probability(std::size_t from, std::size_t to) const;

  /// out = in * K. `out` is resized and overwritten.
  void propagate(std::span<const double> in, std::vector<double>& out) const;

private:
  friend TransitionModel build_transitions(const ChainSpec& spec);

  std::size_t truncation_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

TransitionModel build_transitions(const ChainSpec& spec);

struct StationarySolution {
  std::size_t truncation = 0;
  std::vector<double> distribution;  ///< row-major over (first, second)
  double mass_at_boundary = 0.0;     ///< mass on states with either index at the edge
  double mean_first = 0.0;           ///< mean Q_p
  double mean_second = 0.0;          ///< mean Q_s or Q_sp
  double p00 = 0.0;                  ///< both queues empty
  double p_first_empty = 0.0;        ///< Q_p empty
  std::size_t iterations = 0;
  double residual = 0.0;
};

/// Power iteration from the empty state until the residual drops below
/// spec.tolerance. Throws NonConvergenceError after max_iterations and
/// TruncationError when mass_at_boundary exceeds spec.max_boundary_mass.
StationarySolution solve_stationary(const ChainSpec& spec);

}  // namespace crq::oracle
