#include "z2flux/lattice.hpp"

#include <stdexcept>

#include "json.hpp"

namespace z2flux {

namespace {

int wrap(int v, int L) {
  v %= L;
  return v < 0 ? v + L : v;
}

void check_sign(int v, const char* what) {
  if (v != 1 && v != -1) {
    throw std::invalid_argument(std::string(what) + " must be +1 or -1");
  }
}

}  // namespace

TorusLattice TorusLattice::build(int L) {
  if (L < 4 || L % 2 != 0) {
    throw std::invalid_argument("lattice size must be even and >= 4");
  }
  return TorusLattice{L};
}

GaugeConfig GaugeConfig::all_plus(int L) {
  TorusLattice::build(L);
  GaugeConfig cfg;
  cfg.L = L;
  cfg.sigma.assign(2 * L * L, 1);
  return cfg;
}

GaugeConfig GaugeConfig::random(int L, SplitMix64& rng) {
  GaugeConfig cfg = all_plus(L);
  for (auto& s : cfg.sigma) s = static_cast<std::int8_t>(rng.sign());
  return cfg;
}

int GaugeConfig::edge_index(int x, int y, int mu) const {
  return mu * L * L + wrap(y, L) * L + wrap(x, L);
}

std::int8_t GaugeConfig::at(int x, int y, int mu) const {
  return sigma[edge_index(x, y, mu)];
}

void GaugeConfig::set(int x, int y, int mu, int value) {
  check_sign(value, "bond value");
  sigma[edge_index(x, y, mu)] = static_cast<std::int8_t>(value);
}

std::string GaugeConfig::to_json() const {
  nlohmann::json j;
  j["L"] = L;
  j["sigma"] = std::vector<int>(sigma.begin(), sigma.end());
  return j.dump();
}

GaugeConfig GaugeConfig::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  GaugeConfig cfg = all_plus(j.at("L").get<int>());
  auto vals = j.at("sigma").get<std::vector<int>>();
  if (static_cast<int>(vals.size()) != 2 * cfg.L * cfg.L) {
    throw std::invalid_argument("sigma length does not match 2*L^2");
  }
  for (std::size_t i = 0; i < vals.size(); ++i) {
    check_sign(vals[i], "bond value");
    cfg.sigma[i] = static_cast<std::int8_t>(vals[i]);
  }
  return cfg;
}

FluxSector FluxSector::uniform(int L, int value, int a, int b) {
  TorusLattice::build(L);
  check_sign(value, "flux value");
  check_sign(a, "loop flux a");
  check_sign(b, "loop flux b");
  FluxSector s;
  s.L = L;
  s.phi.assign(L * L, static_cast<std::int8_t>(value));
  s.a = a;
  s.b = b;
  if (!s.product_constraint_ok()) {
    throw std::invalid_argument("uniform sector violates the flux product");
  }
  return s;
}

FluxSector FluxSector::random(int L, SplitMix64& rng) {
  FluxSector s = uniform(L, 1);
  int prod = 1;
  for (int i = 0; i < L * L - 1; ++i) {
    s.phi[i] = static_cast<std::int8_t>(rng.sign());
    prod *= s.phi[i];
  }
  s.phi[L * L - 1] = static_cast<std::int8_t>(prod);  // enforce product +1
  s.a = rng.sign();
  s.b = rng.sign();
  return s;
}

FluxSector FluxSector::staggered(int L, int a, int b) {
  FluxSector s = uniform(L, -1, a, b);
  for (int y = 0; y < L; y += 2) {
    for (int x = 0; x < L; x += 2) s.set(x, y, 1);
  }
  if (!s.product_constraint_ok()) {
    throw std::invalid_argument("staggered sector needs L divisible by 4");
  }
  return s;
}

std::int8_t FluxSector::at(int x, int y) const {
  return phi[wrap(y, L) * L + wrap(x, L)];
}

void FluxSector::set(int x, int y, int value) {
  check_sign(value, "flux value");
  phi[wrap(y, L) * L + wrap(x, L)] = static_cast<std::int8_t>(value);
}

bool FluxSector::product_constraint_ok() const {
  int prod = 1;
  for (auto v : phi) prod *= v;
  return prod == 1;
}

int FluxSector::zero_flux_count() const {
  int n = 0;
  for (auto v : phi) n += (v == 1);
  return n;
}

std::string FluxSector::to_json() const {
  nlohmann::json j;
  j["L"] = L;
  j["phi"] = std::vector<int>(phi.begin(), phi.end());
  j["a"] = a;
  j["b"] = b;
  return j.dump();
}

FluxSector FluxSector::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  FluxSector s = uniform(j.at("L").get<int>(), 1);
  auto vals = j.at("phi").get<std::vector<int>>();
  if (static_cast<int>(vals.size()) != s.L * s.L) {
    throw std::invalid_argument("phi length does not match L^2");
  }
  for (std::size_t i = 0; i < vals.size(); ++i) {
    check_sign(vals[i], "flux value");
    s.phi[i] = static_cast<std::int8_t>(vals[i]);
  }
  s.a = j.at("a").get<int>();
  s.b = j.at("b").get<int>();
  check_sign(s.a, "loop flux a");
  check_sign(s.b, "loop flux b");
  return s;
}

FluxSector flux_of(const GaugeConfig& cfg) {
  const int L = cfg.L;
  FluxSector s = FluxSector::uniform(L, 1);
  for (int y = 0; y < L; ++y) {
    for (int x = 0; x < L; ++x) {
      int f = cfg.at(x, y, 0) * cfg.at(x + 1, y, 1) * cfg.at(x, y + 1, 0) *
              cfg.at(x, y, 1);
      s.phi[y * L + x] = static_cast<std::int8_t>(f);
    }
  }
  int a = 1, b = 1;
  for (int x = 0; x < L; ++x) a *= cfg.at(x, 0, 0);
  for (int y = 0; y < L; ++y) b *= cfg.at(0, y, 1);
  s.a = a;
  s.b = b;
  return s;
}

GaugeConfig gauge_transform(const GaugeConfig& cfg,
                            const std::vector<std::uint8_t>& in_set) {
  const int L = cfg.L;
  if (static_cast<int>(in_set.size()) != L * L) {
    throw std::invalid_argument("vertex set mask must have L^2 entries");
  }
  GaugeConfig out = cfg;
  auto inside = [&](int x, int y) {
    return in_set[wrap(y, L) * L + wrap(x, L)] != 0;
  };
  for (int y = 0; y < L; ++y) {
    for (int x = 0; x < L; ++x) {
      if (inside(x, y) != inside(x + 1, y)) {
        out.sigma[out.edge_index(x, y, 0)] *= -1;
      }
      if (inside(x, y) != inside(x, y + 1)) {
        out.sigma[out.edge_index(x, y, 1)] *= -1;
      }
    }
  }
  return out;
}

GaugeConfig representative(const FluxSector& sector) {
  const int L = sector.L;
  if (!sector.product_constraint_ok()) {
    throw std::invalid_argument("flux sector violates the product constraint");
  }
  GaugeConfig cfg = GaugeConfig::all_plus(L);
  // row 0: all +1 except the wrap-around bond carrying the loop flux a
  cfg.set(L - 1, 0, 0, sector.a);
  // horizontal rows accumulate plaquette fluxes upward
  for (int y = 0; y + 1 < L; ++y) {
    for (int x = 0; x < L; ++x) {
      cfg.set(x, y + 1, 0, sector.at(x, y) * cfg.at(x, y, 0));
    }
  }
  // top-row vertical bonds: v(0) carries b, the rest close the top plaquettes
  int v = sector.b;
  cfg.set(0, L - 1, 1, v);
  for (int x = 0; x + 1 < L; ++x) {
    const int h = cfg.at(x, L - 1, 0) * cfg.at(x, 0, 0);
    v = sector.at(x, L - 1) * h * v;
    cfg.set(x + 1, L - 1, 1, v);
  }
  return cfg;
}

namespace {

void star_flip(GaugeConfig& cfg, int x, int y) {
  cfg.sigma[cfg.edge_index(x, y, 0)] *= -1;
  cfg.sigma[cfg.edge_index(x - 1, y, 0)] *= -1;
  cfg.sigma[cfg.edge_index(x, y, 1)] *= -1;
  cfg.sigma[cfg.edge_index(x, y - 1, 1)] *= -1;
}

GaugeConfig fix_cut_vertical(const GaugeConfig& cfg, int c) {
  const int L = cfg.L;
  GaugeConfig out = cfg;
  // Each bad crossing bond is cured by one star flip at a vertex adjacent to
  // it inside the right half; the flips touch no other crossing bond.
  for (int y = 0; y < L; ++y) {
    if (out.at(c, y, 0) < 0) star_flip(out, c, y);
    if (out.at(c + L / 2, y, 0) < 0) star_flip(out, c + L / 2 + 1, y);
  }
  return out;
}

std::pair<GaugeConfig, GaugeConfig> reflect_vertical(const GaugeConfig& cfg,
                                                     int c) {
  const int L = cfg.L;
  for (int y = 0; y < L; ++y) {
    if (cfg.at(c, y, 0) != 1 || cfg.at(c + L / 2, y, 0) != 1) {
      throw std::invalid_argument(
          "reflect: cut-crossing bonds must be +1 (apply fix_cut first)");
    }
  }
  auto refl = [&](int x) { return wrap(2 * c + 1 - x, L); };
  auto in_left = [&](int x) {
    // left half: columns c+1 .. c+L/2
    const int d = wrap(x - (c + 1), L);
    return d < L / 2;
  };
  GaugeConfig left = GaugeConfig::all_plus(L);
  GaugeConfig right = GaugeConfig::all_plus(L);
  for (int y = 0; y < L; ++y) {
    for (int x = 0; x < L; ++x) {
      const int v = cfg.at(x, y, 1);
      if (in_left(x)) {
        left.set(x, y, 1, v);
        right.set(x, y, 1, -cfg.at(refl(x), y, 1));
      } else {
        right.set(x, y, 1, v);
        left.set(x, y, 1, -cfg.at(refl(x), y, 1));
      }
      if (wrap(x - c, L) == 0 || wrap(x - c - L / 2, L) == 0) {
        continue;  // crossing bonds stay +1
      }
      const int h = cfg.at(x, y, 0);
      // mirror of the bond {x, x+1} is the bond {refl(x+1), refl(x)}
      const int hm = cfg.at(wrap(2 * c - x, L), y, 0);
      if (in_left(x) && in_left(wrap(x + 1, L))) {
        left.set(x, y, 0, h);
        right.set(x, y, 0, -hm);
      } else {
        right.set(x, y, 0, h);
        left.set(x, y, 0, -hm);
      }
    }
  }
  return {left, right};
}

}  // namespace

GaugeConfig fix_cut(const GaugeConfig& cfg, ReflectionCut cut) {
  if (cut.position < 0 || cut.position >= cfg.L) {
    throw std::invalid_argument("cut position out of range");
  }
  if (cut.orientation == CutOrientation::vertical) {
    return fix_cut_vertical(cfg, cut.position);
  }
  return transposed(fix_cut_vertical(transposed(cfg), cut.position));
}

std::pair<GaugeConfig, GaugeConfig> reflect(const GaugeConfig& cfg,
                                            ReflectionCut cut) {
  if (cut.position < 0 || cut.position >= cfg.L) {
    throw std::invalid_argument("cut position out of range");
  }
  if (cut.orientation == CutOrientation::vertical) {
    return reflect_vertical(cfg, cut.position);
  }
  auto [l, r] = reflect_vertical(transposed(cfg), cut.position);
  return {transposed(l), transposed(r)};
}

GaugeConfig transposed(const GaugeConfig& cfg) {
  const int L = cfg.L;
  GaugeConfig out = GaugeConfig::all_plus(L);
  for (int y = 0; y < L; ++y) {
    for (int x = 0; x < L; ++x) {
      out.set(y, x, 1, cfg.at(x, y, 0));
      out.set(y, x, 0, cfg.at(x, y, 1));
    }
  }
  return out;
}

}  // namespace z2flux
