#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "eeg/edge.hpp"
#include "eeg/measure.hpp"
#include "eeg/rng.hpp"

namespace eeg {

enum class ChiKind { Urn, Edge, Null };
std::string_view chi_kind_name(ChiKind k) noexcept;

/// Branch colors of the epoch table. For an edge outcome {i, j}:
///   both endpoints in V:   green (one endpoint outside U, fill it),
///                          magenta (both outside U, fill one by coin)
///   one endpoint x not in V, the other y in V:
///                          yellow (x outside U, fill x),
///                          violet (x in U, y outside U, fill y)
///   neither endpoint in V: orange (exactly one outside U, fill it),
///                          brown (both outside U, fill one by coin)
/// Blue is an urn outcome; None covers the null outcome and edge outcomes
/// whose endpoints are all filled already.
enum class Branch { None, Blue, Green, Magenta, Yellow, Violet, Orange, Brown };
std::string_view branch_name(Branch b) noexcept;

struct CouplingEpoch {
  std::uint64_t step = 0;
  double clock = 0.0;
  ChiKind kind = ChiKind::Null;
  VertexId urn = 0;  // urn outcomes
  Edge edge;         // edge outcomes
  Branch branch = Branch::None;
  std::size_t v_size = 0;
  std::size_t u_size = 0;
  bool v_equals_u = true;
};

/// Paired vertex set V and urn set U on the window {1..n_max}. Replica-local.
class CouplingState {
 public:
  explicit CouplingState(VertexId window, bool keep_log = false);

  VertexId window() const noexcept { return window_; }
  bool in_v(VertexId v) const noexcept { return v < v_.size() && v_[v] != 0; }
  bool in_u(VertexId v) const noexcept { return v < u_.size() && u_[v] != 0; }
  std::size_t v_size() const noexcept { return v_size_; }
  std::size_t u_size() const noexcept { return u_size_; }
  bool v_equals_u() const noexcept { return v_size_ == u_size_ && mismatch_ == 0; }
  std::uint64_t step() const noexcept { return step_; }
  double clock() const noexcept { return clock_; }
  const std::vector<CouplingEpoch>& log() const noexcept { return log_; }

  /// Direct state setup for audits; sets only grow.
  void add_v(VertexId v);
  void add_u(VertexId v);

 private:
  friend void coupling_apply(CouplingState&, const MeasureSpec&, double, Stream&);
  friend void coupling_advance_clock(CouplingState&, double);

  void record(ChiKind kind, VertexId urn, const Edge& edge, Branch branch);

  VertexId window_;
  bool keep_log_;
  std::vector<char> v_;
  std::vector<char> u_;
  std::size_t v_size_ = 0;
  std::size_t u_size_ = 0;
  std::size_t mismatch_ = 0;  // |V symmetric-difference U|
  std::uint64_t step_ = 0;
  double clock_ = 0.0;
  std::vector<CouplingEpoch> log_;
};

/// lambda^(i) for i outside U:
///   i not in V: 1/2 sum_{j not in V, j not in U} mu_ij
///   i in V:     1/2 sum_{j in V, j not in U} mu_ij + sum_{j not in V, j not in U} mu_ij
/// Throws InputError when i is in U.
double coupling_lambda(const CouplingState& state, const MeasureSpec& spec, VertexId i);

/// Applies one epoch with outcome drawn from the uniform eta; coins for the
/// double-new branches come from `rng`. Does not move the clock.
void coupling_apply(CouplingState& state, const MeasureSpec& spec, double eta, Stream& rng);
void coupling_advance_clock(CouplingState& state, double dt);

/// One epoch: clock += Exp(3), then one outcome chi. Needs a unit-mass spec.
void coupling_step(CouplingState& state, const MeasureSpec& spec, Stream& rng);

/// Runs epochs until the next Exp(3) wait would pass horizon_t.
CouplingState run_coupling(const MeasureSpec& spec, double horizon_t, Stream& rng,
                           bool keep_log = false);

/// 3 x P(urn i fills this epoch), summed over every branch of the table.
double coupling_rate_audit(const CouplingState& state, const MeasureSpec& spec, VertexId i);

struct DominationCheck {
  double blue_outside_v = 0.0;  // P(blue branch with i not in V)
  double double_new = 0.0;      // P(edge outcome with both endpoints new)
  bool holds = false;
};
DominationCheck coupling_domination(const CouplingState& state, const MeasureSpec& spec);

/// Columns: step,clock,chi_kind,chi_value,branch_color,V_size,U_size,V_eq_U
void write_coupling_trace_csv(std::ostream& os, const CouplingState& state);

}  // namespace eeg
