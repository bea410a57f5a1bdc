#include "uscqed/dissipation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace uscqed {

const char* channel_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::cavity: return "cavity";
    case ChannelKind::eg: return "eg";
    case ChannelKind::gs: return "gs";
  }
  return "?";
}

namespace {

Operator system_coupling_op(const HilbertSpace& space, ChannelKind kind, int atom) {
  switch (kind) {
    case ChannelKind::cavity: {
      const Operator a = make_destroy(space);
      return a + a.adjoint();
    }
    case ChannelKind::eg:
      return make_transition(space, Level::e, Level::g, atom) +
             make_transition(space, Level::g, Level::e, atom);
    case ChannelKind::gs:
      return make_transition(space, Level::g, Level::s, atom) +
             make_transition(space, Level::s, Level::g, atom);
  }
  throw std::logic_error("unknown channel kind");
}

Channel build_channel(const DressedBasis& basis, ChannelKind kind, int atom,
                      double rate, const std::function<double(double)>& weight_fn) {
  Channel ch;
  ch.kind = kind;
  ch.atom = atom;
  ch.rate = rate;
  if (rate == 0.0) return ch;

  const CMat s = basis.to_dressed(system_coupling_op(basis.space, kind, atom));
  const int dim = basis.dim();

  struct Tr {
    double omega;
    int j, k;
    cd amp;
  };
  std::vector<Tr> trs;
  for (int k = 0; k < dim; ++k) {
    for (int j = 0; j < dim; ++j) {
      const double omega = basis.energies[k] - basis.energies[j];
      if (!(omega > kDegenTol)) continue;  // T = 0: downward only
      const double w = weight_fn ? weight_fn(omega) : 1.0;
      if (w < 0.0) throw std::invalid_argument("spectral weight must be >= 0");
      const double strength = std::norm(s(j, k)) * w;
      if (strength < 1e-14) continue;  // prune: weight < 1e-14 * gamma_c
      trs.push_back({omega, j, k, std::sqrt(rate * w) * s(j, k)});
    }
  }
  std::stable_sort(trs.begin(), trs.end(),
                   [](const Tr& a, const Tr& b) { return a.omega < b.omega; });

  // Transitions within kDegenTol of each other share one jump operator.
  std::size_t i = 0;
  while (i < trs.size()) {
    std::size_t e = i + 1;
    while (e < trs.size() && trs[e].omega - trs[e - 1].omega <= kDegenTol) ++e;
    JumpGroup g;
    g.omega = trs[i].omega;
    for (std::size_t t = i; t < e; ++t)
      g.terms.push_back({trs[t].j, trs[t].k, trs[t].amp});
    ch.groups.push_back(std::move(g));
    i = e;
  }
  return ch;
}

}  // namespace

DissipatorSet build_dissipators(const DressedBasis& basis, const ChannelRates& rates) {
  if (rates.cavity < 0.0 || rates.eg < 0.0 || rates.gs < 0.0)
    throw std::invalid_argument("channel rates must be >= 0");

  DissipatorSet set;
  set.channels.push_back(
      build_channel(basis, ChannelKind::cavity, -1, rates.cavity, rates.spectral_weight));
  for (int a = 0; a < basis.space.n_atoms; ++a)
    set.channels.push_back(
        build_channel(basis, ChannelKind::eg, a, rates.eg, rates.spectral_weight));
  for (int a = 0; a < basis.space.n_atoms; ++a)
    set.channels.push_back(
        build_channel(basis, ChannelKind::gs, a, rates.gs, rates.spectral_weight));

  for (const Channel& ch : set.channels)
    for (const JumpGroup& g : ch.groups)
      for (const JumpTerm& t : g.terms) set.total_weight += std::norm(t.amp);
  return set;
}

std::vector<AuditRow> audit_rows(const DissipatorSet& set) {
  std::vector<AuditRow> rows;
  for (const Channel& ch : set.channels)
    for (const JumpGroup& g : ch.groups)
      for (const JumpTerm& t : g.terms)
        rows.push_back({channel_name(ch.kind), ch.atom, t.to, t.from, g.omega,
                        std::norm(t.amp)});
  return rows;
}

LindbladGenerator::LindbladGenerator(const DressedBasis& basis,
                                     const DissipatorSet& set)
    : dim_(basis.dim()),
      total_rate_(set.total_weight),
      gamma_out_(basis.dim(), 0.0),
      lam_(basis.dim(), basis.dim()) {
  const auto lin = [this](int row, int col) {
    return static_cast<std::size_t>(col) * dim_ + row;
  };

  std::map<std::pair<int, int>, cd> qmap;  // off-diagonal sum L†L entries
  for (const Channel& ch : set.channels) {
    for (const JumpGroup& g : ch.groups) {
      for (const JumpTerm& m : g.terms) {
        gamma_out_[m.from] += std::norm(m.amp);
        for (const JumpTerm& mp : g.terms) {
          gain_.push_back({lin(m.to, mp.to), lin(m.from, mp.from),
                           m.amp * std::conj(mp.amp)});
          if (&m != &mp && m.to == mp.to)
            qmap[{m.from, mp.from}] += std::conj(m.amp) * mp.amp;
        }
      }
    }
  }
  for (const auto& [uv, q] : qmap)
    if (std::abs(q) > 0.0) cross_.push_back({uv.first, uv.second, q});

  for (int y = 0; y < dim_; ++y)
    for (int x = 0; x < dim_; ++x)
      lam_(x, y) = cd{-0.5 * (gamma_out_[x] + gamma_out_[y]),
                      basis.energies[y] - basis.energies[x]};
}

void LindbladGenerator::apply(const CMat& in, CMat& out) const {
  const std::size_t n2 = static_cast<std::size_t>(dim_) * dim_;
  kernels::ops().mul_ew(out.data(), lam_.data(), in.data(), n2);

  const cd* pin = in.data();
  cd* pout = out.data();
  for (const Gain& g : gain_) {
    const cd s = pin[g.src];
    // Manual complex multiply-accumulate: keeps the hot loop free of the
    // NaN-recovery helper call.
    const double re = g.coeff.real() * s.real() - g.coeff.imag() * s.imag();
    const double im = g.coeff.real() * s.imag() + g.coeff.imag() * s.real();
    pout[g.dst] += cd{re, im};
  }

  // -1/2 (Q in + in Q) for the off-diagonal part Q of sum L†L.
  for (const Cross& c : cross_) {
    const cd f = -0.5 * c.q;
    for (int y = 0; y < dim_; ++y)  // out.row(u) -= q/2 * in.row(v)
      pout[static_cast<std::size_t>(y) * dim_ + c.u] +=
          f * pin[static_cast<std::size_t>(y) * dim_ + c.v];
    kernels::ops().axpy(out.col(c.v), f, in.col(c.u), dim_);
  }
}

CMat liouvillian_apply(const CMat& rho_dressed, const DressedBasis& basis,
                       const DissipatorSet& set) {
  if (rho_dressed.rows() != static_cast<std::size_t>(basis.dim()) ||
      rho_dressed.cols() != rho_dressed.rows())
    throw std::invalid_argument("liouvillian_apply: dimension mismatch");
  if (rho_dressed.hermiticity_defect() > 1e-8)
    throw std::invalid_argument("liouvillian_apply: rho is not Hermitian");
  if (std::abs(rho_dressed.trace() - cd{1.0, 0.0}) > 1e-8)
    throw std::invalid_argument("liouvillian_apply: rho is not unit trace");
  LindbladGenerator gen(basis, set);
  CMat out(rho_dressed.rows(), rho_dressed.cols());
  gen.apply(rho_dressed, out);
  return out;
}

}  // namespace uscqed
