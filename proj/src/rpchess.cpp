#include "z2flux/rpchess.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "z2flux/parallel.hpp"

namespace z2flux {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_z(const PartitionPair& p, Parity parity) {
  if (parity == Parity::even) return p.log_z_plus;
  if (p.z_minus_sign <= 0) return -kInf;  // zero or negative odd trace
  return p.log_abs_z_minus;
}

}  // namespace

InequalityReport make_report(double lhs, double rhs, bool degenerate) {
  InequalityReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  if (std::isinf(lhs) && lhs < 0) r.slack = kInf;  // trivially satisfied
  r.passed = r.slack >= -1e-9 * std::max(1.0, std::abs(lhs));
  r.degenerate = degenerate;
  return r;
}

PartitionPair config_partition(const GaugeConfig& cfg, double beta, double t) {
  return partition_pair(eigenvalues_only(hopping_matrix(cfg, t)), beta);
}

PartitionPair sector_partition(const FluxSector& sector, int a, int b,
                               double beta, double t) {
  FluxSector s = sector;
  s.a = a;
  s.b = b;
  return config_partition(representative(s), beta, t);
}

InequalityReport rp_check(const GaugeConfig& cfg, ReflectionCut cut,
                          double beta, double t, Parity parity) {
  const GaugeConfig fixed = fix_cut(cfg, cut);
  const auto [left, right] = reflect(fixed, cut);
  const PartitionPair pc = config_partition(fixed, beta, t);
  const PartitionPair pl = config_partition(left, beta, t);
  const PartitionPair pr = config_partition(right, beta, t);
  const double zc = log_z(pc, parity);
  const double zl = log_z(pl, parity);
  const double zr = log_z(pr, parity);
  const bool degenerate =
      parity == Parity::odd && (pc.z_minus_sign == 0 || pl.z_minus_sign == 0 ||
                                pr.z_minus_sign == 0);
  return make_report(2.0 * zc, zl + zr, degenerate);
}

FluxSector chessboard_extension(const FluxSector& sector, int i, int j) {
  const int L = sector.L;
  if (L % 4 != 0) {
    throw std::invalid_argument("chessboard extension needs L divisible by 4");
  }
  FluxSector out = FluxSector::uniform(L, -1);
  const int v = sector.at(i, j);
  for (int y = (((j % 2) + 2) % 2); y < L; y += 2) {
    for (int x = (((i % 2) + 2) % 2); x < L; x += 2) {
      out.set(x, y, v);
    }
  }
  return out;
}

namespace {

// F^± = -max_{a,b} log Z^±; +inf when every boundary choice is degenerate.
std::pair<double, bool> free_energy_f(const FluxSector& sector, double beta,
                                      double t, Parity parity) {
  double best = -kInf;
  bool any_degenerate = false;
  for (const auto& [a, b] : SectorTable::kBoundary) {
    const PartitionPair p = sector_partition(sector, a, b, beta, t);
    if (parity == Parity::odd && p.z_minus_sign == 0) {
      any_degenerate = true;
      continue;
    }
    best = std::max(best, log_z(p, parity));
  }
  return {-best, any_degenerate};
}

}  // namespace

InequalityReport chessboard_check(const FluxSector& sector, double beta,
                                  double t, Parity parity) {
  const int L = sector.L;
  if (L % 4 != 0) {
    throw std::invalid_argument("chessboard check needs L divisible by 4");
  }
  auto [f_rhs, degenerate] = free_energy_f(sector, beta, t, parity);
  // The extensions take only two shapes (all-pi and the staggered pattern up
  // to translation), but each one is evaluated directly.
  double lhs = 0.0;
  for (int j = 0; j < L; ++j) {
    for (int i = 0; i < L; ++i) {
      auto [f_ext, deg_ext] =
          free_energy_f(chessboard_extension(sector, i, j), beta, t, parity);
      degenerate = degenerate || deg_ext;
      lhs += f_ext;
    }
  }
  lhs /= L * L;
  return make_report(lhs, f_rhs, degenerate);
}

InequalityReport monopole_bound_check(const FluxSector& sector, int a, int b,
                                      double beta, double t, Parity parity) {
  const int L = sector.L;
  if (L % 4 != 0) {
    throw std::invalid_argument("monopole bound needs L divisible by 4");
  }
  const double delta = monopole_mass(beta, L, t, parity);
  const PartitionPair ref = pi_partition(L, -1, -1, beta, t);
  const PartitionPair z = sector_partition(sector, a, b, beta, t);
  const int k = sector.zero_flux_count();
  const double lhs = k * delta - log_z(ref, parity) / beta;
  bool degenerate = false;
  double rhs;
  if (parity == Parity::odd && z.z_minus_sign == 0) {
    degenerate = true;
    rhs = kInf;  // -(1/beta) log 0
  } else {
    rhs = -log_z(z, parity) / beta;
  }
  return make_report(lhs, rhs, degenerate);
}

SectorTable SectorTable::build(int L, unsigned threads) {
  if (L != 4) {
    throw std::invalid_argument(
        "sector enumeration is limited to L = 4 (use sampling above that)");
  }
  SectorTable table;
  table.L_ = L;
  table.n_modes_ = L * L;
  table.n_sectors_ = 1u << (L * L - 1);
  table.eigs_.resize(static_cast<std::size_t>(table.n_sectors_) * 4 *
                     table.n_modes_);
  table.zero_flux_.resize(table.n_sectors_);
  parallel_for(
      table.n_sectors_,
      [&](std::size_t id) {
        const auto sid = static_cast<std::uint32_t>(id);
        table.zero_flux_[id] = static_cast<std::uint8_t>(
            table.sector(sid, 0).zero_flux_count());
        for (int ab = 0; ab < 4; ++ab) {
          const FluxSector s = table.sector(sid, ab);
          const Eigen::VectorXd ev =
              eigenvalues_only(hopping_matrix(representative(s), 1.0));
          double* dst =
              table.eigs_.data() +
              (id * 4 + static_cast<std::size_t>(ab)) * table.n_modes_;
          for (int i = 0; i < table.n_modes_; ++i) dst[i] = ev[i];
        }
      },
      threads);
  return table;
}

FluxSector SectorTable::sector(std::uint32_t id, int ab_index) const {
  FluxSector s = FluxSector::uniform(L_, 1);
  int prod = 1;
  for (int bit = 0; bit < n_modes_ - 1; ++bit) {
    const int v = (id >> bit) & 1u ? -1 : 1;
    s.phi[bit] = static_cast<std::int8_t>(v);
    prod *= v;
  }
  s.phi[n_modes_ - 1] = static_cast<std::int8_t>(prod);
  s.a = kBoundary[ab_index].first;
  s.b = kBoundary[ab_index].second;
  return s;
}

int SectorTable::zero_flux_count(std::uint32_t id) const {
  return zero_flux_[id];
}

const double* SectorTable::spectrum(std::uint32_t id, int ab_index) const {
  return eigs_.data() +
         (static_cast<std::size_t>(id) * 4 + ab_index) * n_modes_;
}

PartitionPair SectorTable::partition(std::uint32_t id, int ab_index,
                                     double beta, double t) const {
  const double* ev = spectrum(id, ab_index);
  Eigen::VectorXd scaled(n_modes_);
  for (int i = 0; i < n_modes_; ++i) scaled[i] = t * ev[i];
  return partition_pair(scaled, beta);
}

OptimumResult brute_force_optimum(const SectorTable& table, double beta,
                                  double t, Parity parity, unsigned threads) {
  struct Best {
    double log_z = -kInf;
    double runner_up = -kInf;
    std::uint32_t id = 0;
    int ab = 0;
    std::uint64_t ties = 0;
  };
  const std::uint32_t n = table.n_sectors();
  const std::size_t chunk = 2048;
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  std::vector<Best> partial(nchunks);
  parallel_for(nchunks, [&](std::size_t c) {
    Best best;
    const std::uint32_t end =
        static_cast<std::uint32_t>(std::min<std::size_t>((c + 1) * chunk, n));
    for (std::uint32_t id = static_cast<std::uint32_t>(c * chunk); id < end;
         ++id) {
      for (int ab = 0; ab < 4; ++ab) {
        double lz;
        if (t == 0.0) {
          lz = parity == Parity::even ? table.n_modes() * std::log(2.0) : -kInf;
        } else {
          lz = log_z(table.partition(id, ab, beta, t), parity);
        }
        if (std::isinf(lz) && lz < 0) continue;
        if (lz > best.log_z + 1e-12) {
          best.log_z = lz;
          best.id = id;
          best.ab = ab;
          best.ties = 1;
        } else if (std::abs(lz - best.log_z) <= 1e-12) {
          best.ties += 1;
        }
        if (table.zero_flux_count(id) > 0) {
          best.runner_up = std::max(best.runner_up, lz);
        }
      }
    }
    partial[c] = best;
  }, threads);

  Best best;
  for (const Best& p : partial) {
    if (p.log_z > best.log_z + 1e-12) {
      best.log_z = p.log_z;
      best.id = p.id;
      best.ab = p.ab;
      best.ties = p.ties;
    } else if (std::abs(p.log_z - best.log_z) <= 1e-12) {
      best.ties += p.ties;
    }
    best.runner_up = std::max(best.runner_up, p.runner_up);
  }

  OptimumResult result;
  result.sector = table.sector(best.id, best.ab);
  result.a = SectorTable::kBoundary[best.ab].first;
  result.b = SectorTable::kBoundary[best.ab].second;
  result.log_z = best.log_z;
  result.runner_up = best.runner_up;
  result.all_tie = best.ties >= static_cast<std::uint64_t>(n) * 4 / 2;
  return result;
}

}  // namespace z2flux
