#include "factoria/hmf.hpp"

namespace factoria {

size_t HigherMF::block_offset(int q) const {
  size_t off = 0;
  for (int i = 0; i < q; ++i) off += z0_blocks[i];
  return off;
}

HigherMF extract_hmf(const FactorCube& x) {
  if (!x.commutative()) throw UnsupportedConfiguration("higher matrix factorizations need a commutative ring");
  x.check_shapes();
  HigherMF z;
  z.ring = x.ring;
  z.dirs = x.dirs;
  z.z1 = x.ranks[x.top()];
  for (int i = 0; i < x.dim; ++i) z.z0_blocks.push_back(x.ranks[x.top() ^ (1u << i)]);
  z.d = tcok_presentation(x);
  for (int q = 0; q < x.dim; ++q) {
    PolyMatrix h(z.z1, z.d.rows());
    h.set_block(0, z.block_offset(q), x.edge(q, x.top()));
    z.h.push_back(std::move(h));
  }
  return z;
}

bool in_omega_ideal(const QPoly& f, const RingData& ring, const std::vector<int>& dirs, int q) {
  std::vector<int> which(dirs.begin(), dirs.begin() + q);
  return reduce_modulo(f, ring, which).is_zero();
}

bool HmfReport::pass() const { return !first_failure(); }

std::optional<HmfCondition> HmfReport::first_failure() const {
  for (const auto& r : results)
    if (!r.pass) return r;
  return std::nullopt;
}

namespace {

void judge(HmfCondition& c, const HigherMF& z, int prior) {
  c.pass = true;
  for (size_t i = 0; i < c.defect.rows() && c.pass; ++i)
    for (size_t j = 0; j < c.defect.cols(); ++j)
      if (!in_omega_ideal(c.defect.at(i, j), z.ring, z.dirs, prior)) {
        c.pass = false;
        c.where = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        break;
      }
}

}  // namespace

HmfReport check_hmf_conditions(const HigherMF& z) {
  HmfReport rep;
  const RingData& R = z.ring;
  const int n = static_cast<int>(z.z0_blocks.size());
  for (int q = 0; q < n; ++q) {
    const QPoly& w = R.omega[z.dirs[q]];
    // (4): omega_q Id - d o h_q on Z^1, i.e. v -> omega_q v - v h_q d.
    HmfCondition c4{4, q + 1, true, PolyMatrix::diagonal(w, z.z1) - pm_mul(z.h[q], z.d, R), ""};
    judge(c4, z, q);
    rep.results.push_back(std::move(c4));

    // (5): omega_q Id - h_q o d on Z^0_q modulo Z^0_{q-1}: keep the block-q
    // columns of v -> omega_q v - v d h_q for v in Z^0_q.
    const size_t rows = z.block_offset(q + 1), off = z.block_offset(q), width = z.z0_blocks[q];
    PolyMatrix dh = pm_mul(z.d.block(0, 0, rows, z.d.cols()), z.h[q], R);
    PolyMatrix defect(rows, width);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < width; ++j) {
        QPoly e = -dh.at(i, off + j);
        if (i == off + j) e += w;
        defect.at(i, j) = e;
      }
    HmfCondition c5{5, q + 1, true, defect, ""};
    judge(c5, z, q);
    rep.results.push_back(std::move(c5));
  }
  return rep;
}

QuotientModule hmf_module(const HigherMF& z) { return cokernel_over_B(z.d, z.ring, pm_grade_infer(z.d)); }

}  // namespace factoria
