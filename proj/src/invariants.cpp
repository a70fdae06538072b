#include "aq/invariants.hpp"

#include "aq/error.hpp"

namespace aq {

namespace {

bool same_ring(const Ring& a, const Ring& b) {
  if (a.kind() != b.kind() || a.characteristic() != b.characteristic() || a.dim() != b.dim()) return false;
  return a.kind() != Ring::Kind::GroupRing || a.group().mul == b.group().mul;
}

void require_ring(const Resolution& r, const Module& k) {
  if (!same_ring(*coefficient_ring(r), *k.ring))
    throw Error("coefficients are over " + k.ring->name() + ", the resolution over " + coefficient_ring(r)->name());
}

SimplicialModule abelianized_to(const Resolution& r, std::size_t top) { return abelianized(r).truncated(top); }

std::size_t rank_of(const Module& m) {
  const auto r = free_rank(m);
  if (!r) throw Unsupported("expected a free level");
  return *r;
}

bool equal_mod(const Matrix& a, const Matrix& b, const std::vector<Int>& moduli) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Int diff = a(i, j) - b(i, j);
      if (moduli[i] == 0 ? diff != 0 : diff % moduli[i] != 0) return false;
    }
  return true;
}

// Per-degree subquotients and ranks of the (co)chain complex for one node.
struct NodeComplex {
  std::vector<Subquotient> groups;
  std::vector<std::size_t> ranks;
};

NodeComplex node_complex(const SimplicialModule& a, const Module& g, Variance v, std::size_t range) {
  NodeComplex out;
  for (std::size_t n = 0; n <= range; ++n) out.ranks.push_back(rank_of(a.levels[n]));
  if (v == Variance::Cohomology) {
    const CochainComplex c = hom_cosimplicial(a, g).alternating_complex();
    for (std::size_t n = 0; n <= range; ++n) out.groups.push_back(c.cohomology_subquotient(static_cast<int>(n)));
  } else {
    const ChainComplex c = tensor_simplicial(a, g).alternating_complex();
    for (std::size_t n = 0; n <= range; ++n) out.groups.push_back(c.homology_subquotient(static_cast<int>(n)));
  }
  return out;
}

Matrix induced_in_degree(const NodeComplex& src, const NodeComplex& dst, const Matrix& f, std::size_t n) {
  return induced_map(src.groups[n], dst.groups[n], kron(Matrix::identity(src.ranks[n]), f));
}

}  // namespace

void require_certificate(const Resolution& r, std::size_t range) {
  const auto cert = check_certificate(r, range);
  if (!cert.valid()) throw CheckFailed("resolution certificate failed: " + cert.first_failure().value_or(""));
}

std::vector<FGAbelianGroup> cohomology(const Resolution& r, const Module& k, std::size_t range) {
  require_ring(r, k);
  require_certificate(r, range);
  return cohomotopy(hom_cosimplicial(abelianized_to(r, range + 1), k), range);
}

FGAbelianGroup cohomology_via_em(const Resolution& r, const Module& k, std::size_t n) {
  require_ring(r, k);
  require_certificate(r, n);
  const SimplicialModule a = abelianized_to(r, n + 1);
  if (n == 0) return MapSpace(a, SimplicialModule::constant(k, 1), 1).maps().group();
  return homotopy_classes(a, eilenberg_maclane(k, n, n + 1)).group();
}

std::vector<FGAbelianGroup> homology(const Resolution& r, std::size_t range) {
  require_certificate(r, range);
  if (const auto* g = std::get_if<GroupResolution>(&r))
    return moore_homotopy(abelianize(g->object.truncated(range + 1)), range);
  return moore_homotopy(abelianized_to(r, range + 1), range);
}

Module homology_module(const ModuleComplex& c, std::size_t n) {
  const Subquotient sq = c.chain_complex().homology_subquotient(static_cast<int>(n));
  Module out;
  out.ring = c.ring;
  out.group = PresentedGroup::cyclic_sum(sq.canon.moduli);
  for (const auto& act : c.modules.at(n).action) out.action.push_back(induced_map(sq, sq, act));
  return out;
}

std::vector<Module> homology_over(const Resolution& r, std::size_t range) {
  require_certificate(r, range);
  const ModuleComplex c = normalize_dk(abelianized_to(r, range + 1));
  std::vector<Module> out;
  for (std::size_t n = 0; n <= range; ++n)
    out.push_back(n < c.modules.size() ? homology_module(c, n) : Module::zero(c.ring));
  return out;
}

std::vector<FGAbelianGroup> homology_with_coeffs(const Resolution& r, const Module& g, std::size_t range) {
  require_ring(r, g);
  require_certificate(r, range);
  return moore_homotopy(tensor_simplicial(abelianized_to(r, range + 1), g), range);
}

FreeResolution classical_resolution(const GroupResolution& r) {
  const GroupTable x = r.x.group_table();
  const RingPtr ring = Ring::group_ring(x);
  const ModuleComplex n = normalize_dk(abelianize_over(r.object, r.augmentation, x));
  const std::size_t dim = x.order();

  FreeResolution p;
  p.target = Module::trivial(ring, {0});
  p.ranks.push_back(1);
  for (const auto& m : n.modules) p.ranks.push_back(rank_of(m));
  p.augmentation = Matrix(1, dim);
  for (std::size_t h = 0; h < dim; ++h) p.augmentation(0, h) = 1;

  // x·t ↦ x·p(t) - x
  const std::size_t gens0 = p.ranks[1];
  Matrix d0(dim, gens0 * dim);
  for (std::size_t t = 0; t < gens0; ++t)
    for (std::size_t h = 0; h < dim; ++h) {
      const auto col = free_index(*ring, t, h);
      d0(static_cast<std::size_t>(x(static_cast<int>(h), r.augmentation.at(t))), col) += 1;
      d0(h, col) -= 1;
    }
  p.differentials.push_back(d0);
  for (const auto& d : n.d) p.differentials.push_back(d);
  return p;
}

std::vector<FGAbelianGroup> classical_cohomology(const GroupResolution& r, const Module& k, std::size_t range) {
  require_ring(r, k);
  require_certificate(r, range);
  GroupResolution cut = r;
  cut.object = r.object.truncated(range + 1);
  const CochainComplex c = hom_complex(classical_resolution(cut), k);
  std::vector<FGAbelianGroup> out;
  for (std::size_t n = 0; n <= range; ++n) out.push_back(c.cohomology(static_cast<int>(n)));
  return out;
}

std::vector<FGAbelianGroup> classical_homology(const GroupResolution& r, const Module& m, std::size_t range) {
  require_ring(r, m);
  require_certificate(r, range);
  GroupResolution cut = r;
  cut.object = r.object.truncated(range + 1);
  const ChainComplex c = tensor_complex(classical_resolution(cut), m);
  std::vector<FGAbelianGroup> out;
  for (std::size_t n = 0; n <= range; ++n) out.push_back(c.homology(static_cast<int>(n)));
  return out;
}

DiagramResult diagram_coefficients(const Resolution& r, const CoefficientDiagram& d, Variance v, std::size_t range) {
  require_certificate(r, range);
  for (const auto& node : d.nodes) require_ring(r, node);
  for (const auto& a : d.arrows)
    if (a.from >= d.nodes.size() || a.to >= d.nodes.size() || !is_module_hom(d.nodes[a.from], d.nodes[a.to], a.map))
      throw Error("diagram arrow is not a module map between its nodes");

  const SimplicialModule ab = abelianized_to(r, range + 1);
  std::vector<NodeComplex> nodes;
  DiagramResult out;
  for (const auto& node : d.nodes) {
    nodes.push_back(node_complex(ab, node, v, range));
    std::vector<FGAbelianGroup> vals;
    for (const auto& sq : nodes.back().groups) vals.push_back(sq.group());
    out.values.push_back(vals);
  }
  // cohomology and homology are both covariant in the coefficients
  for (const auto& a : d.arrows) {
    std::vector<Matrix> per;
    for (std::size_t n = 0; n <= range; ++n) per.push_back(induced_in_degree(nodes[a.from], nodes[a.to], a.map, n));
    out.induced.push_back(per);
  }
  for (std::size_t i = 0; i < d.arrows.size(); ++i)
    for (std::size_t j = 0; j < d.arrows.size(); ++j) {
      const auto &a = d.arrows[i], &b = d.arrows[j];
      if (a.to != b.from) continue;
      const Matrix composite = b.map * a.map;
      for (std::size_t n = 0; n <= range; ++n) {
        const auto& moduli = nodes[b.to].groups[n].canon.moduli;
        const Matrix chained = out.induced[j][n] * out.induced[i][n];
        if (!equal_mod(chained, induced_in_degree(nodes[a.from], nodes[b.to], composite, n), moduli))
          out.functorial = false;
        for (std::size_t k = 0; k < d.arrows.size(); ++k)
          if (d.arrows[k].from == a.from && d.arrows[k].to == b.to && !equal_mod(chained, out.induced[k][n], moduli))
            out.functorial = false;
      }
    }
  return out;
}

}  // namespace aq
