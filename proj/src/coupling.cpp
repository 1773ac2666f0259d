#include "eeg/coupling.hpp"

#include <ostream>
#include <sstream>

#include "eeg/errors.hpp"
#include "eeg/report.hpp"

namespace eeg {

namespace {

struct Resolution {
  Branch branch = Branch::None;
  VertexId fill = 0;
  VertexId alternative = 0;  // coin branches fill `fill` or `alternative`
  bool coin = false;
};

Resolution resolve_edge(const CouplingState& s, const Edge& e) {
  const VertexId i = e.i();
  const VertexId j = e.j();
  const bool vi = s.in_v(i);
  const bool vj = s.in_v(j);
  const bool ui = s.in_u(i);
  const bool uj = s.in_u(j);
  Resolution r;
  if (vi && vj) {
    if (!ui && !uj) r = {Branch::Magenta, i, j, true};
    else if (!ui) r = {Branch::Green, i, 0, false};
    else if (!uj) r = {Branch::Green, j, 0, false};
  } else if (vi != vj) {
    const VertexId x = vi ? j : i;
    const VertexId y = vi ? i : j;
    if (!s.in_u(x)) r = {Branch::Yellow, x, 0, false};
    else if (!s.in_u(y)) r = {Branch::Violet, y, 0, false};
  } else {
    if (!ui && !uj) r = {Branch::Brown, i, j, true};
    else if (!ui) r = {Branch::Orange, i, 0, false};
    else if (!uj) r = {Branch::Orange, j, 0, false};
  }
  return r;
}

void require_unit_mass(const MeasureSpec& spec) {
  if (!spec.is_normalized()) {
    throw InputError("coupling: the edge measure must be normalized to total mass 1");
  }
}

}  // namespace

std::string_view chi_kind_name(ChiKind k) noexcept {
  switch (k) {
    case ChiKind::Urn: return "urn";
    case ChiKind::Edge: return "edge";
    case ChiKind::Null: return "null";
  }
  return "null";
}

std::string_view branch_name(Branch b) noexcept {
  switch (b) {
    case Branch::None: return "none";
    case Branch::Blue: return "blue";
    case Branch::Green: return "green";
    case Branch::Magenta: return "magenta";
    case Branch::Yellow: return "yellow";
    case Branch::Violet: return "violet";
    case Branch::Orange: return "orange";
    case Branch::Brown: return "brown";
  }
  return "none";
}

CouplingState::CouplingState(VertexId window, bool keep_log)
    : window_(window),
      keep_log_(keep_log),
      v_(static_cast<std::size_t>(window) + 1, 0),
      u_(static_cast<std::size_t>(window) + 1, 0) {}

void CouplingState::add_v(VertexId v) {
  if (v == 0 || v > window_) throw InputError("coupling state: vertex outside the window");
  if (v_[v]) return;
  v_[v] = 1;
  ++v_size_;
  if (u_[v]) --mismatch_;
  else ++mismatch_;
}

void CouplingState::add_u(VertexId v) {
  if (v == 0 || v > window_) throw InputError("coupling state: urn outside the window");
  if (u_[v]) return;
  u_[v] = 1;
  ++u_size_;
  if (v_[v]) --mismatch_;
  else ++mismatch_;
}

void CouplingState::record(ChiKind kind, VertexId urn, const Edge& edge, Branch branch) {
  if (!keep_log_) return;
  CouplingEpoch ep;
  ep.step = step_;
  ep.clock = clock_;
  ep.kind = kind;
  ep.urn = urn;
  ep.edge = edge;
  ep.branch = branch;
  ep.v_size = v_size_;
  ep.u_size = u_size_;
  ep.v_equals_u = v_equals_u();
  log_.push_back(ep);
}

double coupling_lambda(const CouplingState& state, const MeasureSpec& spec, VertexId i) {
  if (state.in_u(i)) throw InputError("coupling_lambda: urn already filled");
  const bool i_in_v = state.in_v(i);
  double half = 0.0;
  double full = 0.0;
  for (const Neighbor& nb : spec.neighbors(i)) {
    if (state.in_u(nb.vertex)) continue;
    if (state.in_v(nb.vertex)) {
      if (i_in_v) half += nb.mass;
    } else {
      (i_in_v ? full : half) += nb.mass;
    }
  }
  return 0.5 * half + full;
}

void coupling_advance_clock(CouplingState& state, double dt) { state.clock_ += dt; }

void coupling_apply(CouplingState& state, const MeasureSpec& spec, double eta, Stream& rng) {
  ++state.step_;
  // Outcome order: urns by index, then support edges, then the null outcome.
  double acc = 0.0;
  for (VertexId i = 1; i <= state.window(); ++i) {
    if (state.in_u(i)) continue;
    acc += coupling_lambda(state, spec, i) / 3.0;
    if (eta < acc) {
      state.add_u(i);
      state.record(ChiKind::Urn, i, Edge(), Branch::Blue);
      return;
    }
  }
  const auto support = spec.support();
  const auto masses = spec.support_masses();
  for (std::size_t k = 0; k < support.size(); ++k) {
    acc += masses[k] / 3.0;
    if (eta < acc) {
      const Edge& e = support[k];
      const Resolution r = resolve_edge(state, e);
      if (r.coin) state.add_u(rng.coin() ? r.fill : r.alternative);
      else if (r.fill != 0) state.add_u(r.fill);
      state.add_v(e.i());
      state.add_v(e.j());
      state.record(ChiKind::Edge, 0, e, r.branch);
      return;
    }
  }
  if (1.0 - acc < -1e-12) {
    std::ostringstream os;
    os << "coupling: null outcome probability " << 1.0 - acc << " is negative";
    throw InvariantViolation(os.str());
  }
  state.record(ChiKind::Null, 0, Edge(), Branch::None);
}

void coupling_step(CouplingState& state, const MeasureSpec& spec, Stream& rng) {
  require_unit_mass(spec);
  coupling_advance_clock(state, rng.exponential(3.0));
  coupling_apply(state, spec, rng.uniform(), rng);
}

CouplingState run_coupling(const MeasureSpec& spec, double horizon_t, Stream& rng, bool keep_log) {
  require_unit_mass(spec);
  if (!(horizon_t >= 0.0) || !std::isfinite(horizon_t)) {
    throw InputError("run_coupling: horizon must be finite and non-negative");
  }
  CouplingState state(spec.n_max(), keep_log);
  for (;;) {
    const double wait = rng.exponential(3.0);
    if (state.clock() + wait > horizon_t) break;
    coupling_advance_clock(state, wait);
    coupling_apply(state, spec, rng.uniform(), rng);
  }
  return state;
}

double coupling_rate_audit(const CouplingState& state, const MeasureSpec& spec, VertexId i) {
  double three_p = coupling_lambda(state, spec, i);
  const auto support = spec.support();
  const auto masses = spec.support_masses();
  for (std::size_t k = 0; k < support.size(); ++k) {
    const Resolution r = resolve_edge(state, support[k]);
    if (r.coin) {
      if (r.fill == i || r.alternative == i) three_p += 0.5 * masses[k];
    } else if (r.fill == i) {
      three_p += masses[k];
    }
  }
  return three_p;
}

DominationCheck coupling_domination(const CouplingState& state, const MeasureSpec& spec) {
  DominationCheck out;
  for (VertexId i = 1; i <= state.window(); ++i) {
    if (state.in_u(i) || state.in_v(i)) continue;
    out.blue_outside_v += coupling_lambda(state, spec, i) / 3.0;
  }
  const auto support = spec.support();
  const auto masses = spec.support_masses();
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (!state.in_v(support[k].i()) && !state.in_v(support[k].j())) out.double_new += masses[k] / 3.0;
  }
  out.holds = out.blue_outside_v <= out.double_new * (1.0 + 1e-12);
  return out;
}

void write_coupling_trace_csv(std::ostream& os, const CouplingState& state) {
  os << "step,clock,chi_kind,chi_value,branch_color,V_size,U_size,V_eq_U\n";
  for (const auto& ep : state.log()) {
    os << ep.step << ',' << format_real(ep.clock) << ',' << chi_kind_name(ep.kind) << ',';
    if (ep.kind == ChiKind::Urn) os << ep.urn;
    else if (ep.kind == ChiKind::Edge) os << ep.edge.i() << '-' << ep.edge.j();
    os << ',' << branch_name(ep.branch) << ',' << ep.v_size << ',' << ep.u_size << ','
       << (ep.v_equals_u ? 1 : 0) << '\n';
  }
}

}  // namespace eeg
