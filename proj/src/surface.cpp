#include "prymlab/surface.hpp"

#include <deque>
#include <string>

#include "prymlab/errors.hpp"

namespace prymlab::surface {

namespace {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw InternalError("chain coefficient overflow");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw InternalError("chain coefficient overflow");
  return r;
}

}  // namespace

HomologyModel build_model(const cover::CoverModel& cover, bool allow_disconnected) {
  if (cover.datum.base_genus != 0) throw UnsupportedError("homology is only built over a base of genus 0");
  HomologyModel h;
  h.cover_ = cover;
  const std::size_t d = cover.degree(), k = cover.perms.size();
  h.d_ = d;
  h.k_ = k;
  const std::size_t edges = d * k;

  // branch vertices: one per cycle of each monodromy permutation
  h.head_.assign(edges, -1);
  std::size_t next_vertex = d;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& g = cover.perms[i];
    for (std::size_t t = 0; t < d; ++t) {
      if (h.head_[i * d + t] >= 0) continue;
      for (std::size_t u = t; h.head_[i * d + u] < 0; u = static_cast<std::size_t>(g[u]))
        h.head_[i * d + u] = static_cast<int>(next_vertex);
      ++next_vertex;
    }
  }
  h.vertex_count_ = next_vertex;

  // face of sheet s runs e(1,s_0), back along e(1,s_1), e(2,s_1), ..., with s_i = g_i^-1(s_{i-1})
  std::vector<cover::Perm> inv;
  for (const auto& g : cover.perms) inv.push_back(cover::inverse(g));
  h.face_plus_.assign(edges, -1);
  h.face_minus_.assign(edges, -1);
  for (std::size_t s = 0; s < d; ++s) {
    std::size_t cur = s;
    for (std::size_t i = 0; i < k; ++i) {
      h.face_plus_[i * d + cur] = static_cast<int>(s);
      cur = static_cast<std::size_t>(inv[i][cur]);
      h.face_minus_[i * d + cur] = static_cast<int>(s);
    }
    if (cur != s) throw InternalError("face boundary does not close; product relation violated");
  }

  // primal spanning forest by BFS, edges in index order
  std::vector<std::vector<std::size_t>> incident(h.vertex_count_);
  for (std::size_t e = 0; e < edges; ++e) {
    incident[e % d].push_back(e);
    incident[h.head_[e]].push_back(e);
  }
  auto tail = [d](std::size_t e) { return static_cast<int>(e % d); };
  std::vector<int> parent_edge(h.vertex_count_, -1), depth(h.vertex_count_, -1);
  std::vector<char> in_tree(edges, 0);
  std::size_t components = 0;
  for (std::size_t root = 0; root < h.vertex_count_; ++root) {
    if (depth[root] >= 0) continue;
    ++components;
    depth[root] = 0;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t e : incident[v]) {
        const std::size_t w = static_cast<int>(v) == tail(e) ? static_cast<std::size_t>(h.head_[e])
                                                               : static_cast<std::size_t>(tail(e));
        if (depth[w] >= 0) continue;
        depth[w] = depth[v] + 1;
        parent_edge[w] = static_cast<int>(e);
        in_tree[e] = 1;
        queue.push_back(w);
      }
    }
  }
  h.components_ = components;
  if (components > 1 && !allow_disconnected)
    throw UnsupportedError("cover has " + std::to_string(components) + " components; homology needs a connected cover");

  // dual spanning forest on faces through non-tree edges
  std::vector<std::vector<std::size_t>> face_edges(d);
  for (std::size_t e = 0; e < edges; ++e) {
    if (in_tree[e] || h.face_plus_[e] == h.face_minus_[e]) continue;
    face_edges[h.face_plus_[e]].push_back(e);
    face_edges[h.face_minus_[e]].push_back(e);
  }
  h.is_cotree_.assign(edges, 0);
  h.dual_parent_edge_.assign(d, -1);
  std::vector<char> seen_face(d, 0);
  for (std::size_t root = 0; root < d; ++root) {
    if (seen_face[root]) continue;
    seen_face[root] = 1;
    h.dual_order_.push_back(static_cast<int>(root));
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t f = queue.front();
      queue.pop_front();
      for (std::size_t e : face_edges[f]) {
        const std::size_t other = static_cast<std::size_t>(
            h.face_plus_[e] == static_cast<int>(f) ? h.face_minus_[e] : h.face_plus_[e]);
        if (seen_face[other]) continue;
        seen_face[other] = 1;
        h.is_cotree_[e] = 1;
        h.dual_parent_edge_[other] = static_cast<int>(e);
        h.dual_order_.push_back(static_cast<int>(other));
        queue.push_back(other);
      }
    }
  }

  // rotation at each vertex; darts are 2e (tail end) and 2e+1 (head end)
  auto sigma = [&](std::size_t dart) -> std::size_t {
    const std::size_t e = dart / 2, i = e / d, t = e % d;
    if (dart % 2 == 0) return 2 * (((i + k - 1) % k) * d + t);
    return 2 * (i * d + static_cast<std::size_t>(cover.perms[i][t])) + 1;
  };

  for (std::size_t e = 0; e < edges; ++e) {
    if (in_tree[e] || h.is_cotree_[e]) continue;
    h.basis_edges_.push_back(e);

    // closed walk: e forward, then the tree path from its head back to its tail
    struct Step {
      std::size_t edge;
      int dir;
    };
    std::vector<Step> walk{{e, 1}};
    std::size_t a = static_cast<std::size_t>(h.head_[e]), b = static_cast<std::size_t>(tail(e));
    std::vector<Step> down;
    auto up_step = [&](std::size_t v) {
      const std::size_t pe = static_cast<std::size_t>(parent_edge[v]);
      const bool from_tail = static_cast<std::size_t>(tail(pe)) == v;
      const std::size_t next = from_tail ? static_cast<std::size_t>(h.head_[pe]) : static_cast<std::size_t>(tail(pe));
      return std::pair<Step, std::size_t>{{pe, from_tail ? 1 : -1}, next};
    };
    while (a != b) {
      if (depth[a] >= depth[b]) {
        auto [s, next] = up_step(a);
        walk.push_back(s);
        a = next;
      } else {
        auto [s, next] = up_step(b);
        down.push_back({s.edge, -s.dir});
        b = next;
      }
    }
    walk.insert(walk.end(), down.rbegin(), down.rend());

    Chain z(edges, 0), cross(edges, 0);
    for (std::size_t j = 0; j < walk.size(); ++j) {
      const Step& in = walk[j];
      const Step& out = walk[(j + 1) % walk.size()];
      z[in.edge] += in.dir;
      const std::size_t x = 2 * in.edge + (in.dir > 0 ? 1 : 0);
      const std::size_t y = 2 * out.edge + (out.dir > 0 ? 0 : 1);
      for (std::size_t dart = sigma(x); dart != y; dart = sigma(dart)) cross[dart / 2] += dart % 2 == 0 ? 1 : -1;
    }
    h.basis_.push_back(std::move(z));
    h.crossing_.push_back(std::move(cross));
  }

  const std::size_t r = h.basis_.size();
  h.gram_ = IntMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      long long s = 0;
      for (std::size_t e = 0; e < edges; ++e)
        if (h.basis_[i][e] != 0 && h.crossing_[j][e] != 0) s += h.basis_[i][e] * h.crossing_[j][e];
      h.gram_(i, j) = to_int(s);
    }
  return h;
}

HomologyModel build(const cover::CoverModel& cover) { return build_model(cover, false); }

HomologyModel build_disjoint(const cover::CoverModel& cover) { return build_model(cover, true); }

bool HomologyModel::is_cycle(const Chain& z) const {
  if (z.size() != edge_count()) return false;
  std::vector<long long> boundary(vertex_count_, 0);
  for (std::size_t e = 0; e < z.size(); ++e) {
    if (z[e] == 0) continue;
    boundary[e % d_] -= z[e];
    boundary[head_[e]] += z[e];
  }
  for (long long b : boundary)
    if (b != 0) return false;
  return true;
}

IntMatrix HomologyModel::coordinates(const Chain& z) const {
  if (!is_cycle(z)) throw InternalError("chain is not a cycle");
  // z - Σ λ_f ∂F_f vanishes on cotree edges; what remains on leftover edges are the coordinates
  std::vector<long long> lambda(d_, 0);
  for (int f : dual_order_) {
    const int e = dual_parent_edge_[f];
    if (e < 0) continue;
    if (face_plus_[e] == f) {
      lambda[f] = checked_add(z[e], lambda[face_minus_[e]]);
    } else {
      lambda[f] = checked_add(lambda[face_plus_[e]], -z[e]);
    }
  }
  IntMatrix c(basis_edges_.size(), 1);
  for (std::size_t j = 0; j < basis_edges_.size(); ++j) {
    const std::size_t e = basis_edges_[j];
    c(j, 0) = to_int(checked_add(z[e], -(lambda[face_plus_[e]] - lambda[face_minus_[e]])));
  }
  return c;
}

IntMatrix HomologyModel::intersections(const Chain& z) const {
  IntMatrix row(1, rank());
  for (std::size_t j = 0; j < rank(); ++j) {
    long long s = 0;
    for (std::size_t e = 0; e < z.size(); ++e)
      if (z[e] != 0) s = checked_add(s, checked_mul(z[e], crossing_[j][e]));
    row(0, j) = to_int(s);
  }
  return row;
}

Chain HomologyModel::face_boundary(std::size_t s) const {
  Chain z(edge_count(), 0);
  for (std::size_t e = 0; e < z.size(); ++e) {
    if (face_plus_[e] == static_cast<int>(s)) z[e] += 1;
    if (face_minus_[e] == static_cast<int>(s)) z[e] -= 1;
  }
  return z;
}

bool is_equivariant(const cover::CoverModel& src, const cover::CoverModel& dst, const IntMatrix& fiber) {
  if (fiber.rows() != src.degree() || fiber.cols() != dst.degree()) return false;
  if (src.perms.size() != dst.perms.size()) return false;
  for (std::size_t g = 0; g < src.perms.size(); ++g) {
    const auto& p = src.perms[g];
    const auto& q = dst.perms[g];
    for (std::size_t i = 0; i < fiber.rows(); ++i)
      for (std::size_t j = 0; j < fiber.cols(); ++j)
        if (fiber(p[i], q[j]) != fiber(i, j)) return false;
  }
  return true;
}

IntMatrix induced_map(const HomologyModel& src, const HomologyModel& dst, const IntMatrix& fiber) {
  if (src.cover().datum.gens != dst.cover().datum.gens)
    throw DomainError("induced_map: covers come from different monodromy data");
  if (fiber.rows() != src.degree() || fiber.cols() != dst.degree())
    throw DomainError("induced_map: fiber matrix is " + std::to_string(fiber.rows()) + "x" +
                      std::to_string(fiber.cols()) + ", expected " + std::to_string(src.degree()) + "x" +
                      std::to_string(dst.degree()));
  if (!is_equivariant(src.cover(), dst.cover(), fiber))
    throw DomainError("induced_map: fiber matrix is not equivariant");
  const auto m = fiber.to_rows();
  const std::size_t d = src.degree(), e_dst = dst.edge_count();
  IntMatrix out(dst.rank(), src.rank());
  for (std::size_t c = 0; c < src.rank(); ++c) {
    Chain image(e_dst, 0);
    const Chain& z = src.basis()[c];
    for (std::size_t e = 0; e < z.size(); ++e) {
      if (z[e] == 0) continue;
      const std::size_t i = e / d, t = e % d;
      for (std::size_t j = 0; j < dst.degree(); ++j)
        if (m[t][j] != 0) {
          auto& slot = image[dst.edge_index(i, j)];
          slot = checked_add(slot, checked_mul(z[e], m[t][j]));
        }
    }
    if (!dst.is_cycle(image)) throw InternalError("induced_map: image of a cycle is not a cycle");
    const IntMatrix col = dst.coordinates(image);
    for (std::size_t r = 0; r < dst.rank(); ++r) out(r, c) = col(r, 0);
  }
  return out;
}

}  // namespace prymlab::surface
