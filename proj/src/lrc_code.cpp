#include "unilrc/lrc_code.h"

#include <algorithm>
#include <cctype>
#include <map>

namespace unilrc {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

// Global parity rows: powers 1..g of the evaluation points.
GfMatrix global_rows(const std::vector<gf::Element>& points, std::size_t g) {
  if (g == 0) return GfMatrix(0, points.size());
  return vandermonde(points, g, 1);
}

// Stacks identity, globals and locals into an n x k generator.
GfMatrix stack_generator(std::size_t k, const GfMatrix& globals, const GfMatrix& locals) {
  GfMatrix gen(k + globals.rows() + locals.rows(), k);
  for (std::size_t i = 0; i < k; ++i) gen(i, i) = 1;
  for (std::size_t r = 0; r < globals.rows(); ++r)
    std::copy(globals.row(r).begin(), globals.row(r).end(), gen.row(k + r).begin());
  for (std::size_t r = 0; r < locals.rows(); ++r)
    std::copy(locals.row(r).begin(), locals.row(r).end(),
              gen.row(k + globals.rows() + r).begin());
  return gen;
}

// Local parity row = XOR of the generator rows of the other group members, so
// that the group XORs to zero.
GfMatrix coupled_locals(std::size_t k, const GfMatrix& globals, const GroupLayout& layout) {
  GfMatrix locals(layout.groups.size(), k);
  for (std::size_t i = 0; i < layout.groups.size(); ++i) {
    auto row = locals.row(i);
    for (BlockIndex b : layout.groups[i].blocks) {
      if (b < k) {
        row[b] ^= 1;
      } else if (b < k + globals.rows()) {
        gf::xor_block_acc(row, globals.row(b - k));
      }
    }
  }
  return locals;
}

CodeDefinition finish(CodeSpec spec, GroupLayout layout, GfMatrix generator,
                      std::vector<gf::Element> points) {
  CodeDefinition code;
  code.spec = spec;
  code.layout = std::move(layout);
  code.parity_check = derive_parity_check(generator);
  code.generator = std::move(generator);
  code.eval_points = std::move(points);
  return code;
}

void require_field_size(std::size_t k) {
  if (k > 255)
    throw ParameterError("k = " + std::to_string(k) +
                         " exceeds the 255 distinct nonzero points of GF(2^8)");
  if (k == 0) throw ParameterError("k must be positive");
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::UniLRC: return "UniLRC";
    case Family::ALRC: return "ALRC";
    case Family::OLRC: return "OLRC";
    case Family::ULRC: return "ULRC";
  }
  return "?";
}

std::string_view to_string(BlockRole r) {
  switch (r) {
    case BlockRole::Data: return "data";
    case BlockRole::Global: return "global";
    case BlockRole::Local: return "local";
  }
  return "?";
}

Family family_from_string(std::string_view name) {
  const std::string s = lower(name);
  if (s == "unilrc") return Family::UniLRC;
  if (s == "alrc") return Family::ALRC;
  if (s == "olrc") return Family::OLRC;
  if (s == "ulrc") return Family::ULRC;
  throw ParameterError("unknown code family '" + std::string(name) + "'");
}

BlockRole role_from_string(std::string_view name) {
  if (name == "data") return BlockRole::Data;
  if (name == "global") return BlockRole::Global;
  if (name == "local") return BlockRole::Local;
  throw ParameterError("unknown block role '" + std::string(name) + "'");
}

BlockRole CodeDefinition::role(BlockIndex b) const {
  if (b < spec.k) return BlockRole::Data;
  if (b < spec.k + spec.g) return BlockRole::Global;
  return BlockRole::Local;
}

std::vector<std::size_t> CodeDefinition::local_groups_of(BlockIndex b) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < layout.groups.size(); ++i) {
    const auto& grp = layout.groups[i];
    if (!grp.xor_repairable) continue;
    if (std::find(grp.blocks.begin(), grp.blocks.end(), b) != grp.blocks.end())
      out.push_back(i);
  }
  return out;
}

std::vector<gf::Element> default_eval_points(std::size_t k) {
  require_field_size(k);
  std::vector<gf::Element> points(k);
  for (std::size_t j = 0; j < k; ++j) points[j] = gf::exp(static_cast<unsigned>(j));
  return points;
}

CodeDefinition build_unilrc(std::size_t alpha, std::size_t z) {
  if (alpha < 1) throw ParameterError("UniLRC requires alpha >= 1");
  if (z < 2) throw ParameterError("UniLRC requires z >= 2: a single cluster cannot tolerate a cluster failure");
  const std::size_t g = alpha * z;
  const std::size_t k = alpha * z * (z - 1);
  const std::size_t n = alpha * z * z + z;
  require_field_size(k);
  const std::size_t per_group = k / z;

  const auto points = default_eval_points(k);
  // Rows: powers 0..alpha*z of the evaluation points.
  const GfMatrix base = vandermonde(points, g + 1, 0);

  // Split off the all-ones row; the remaining rows generate the global parities.
  GfMatrix globals(g, k);
  for (std::size_t r = 0; r < g; ++r)
    std::copy(base.row(r + 1).begin(), base.row(r + 1).end(), globals.row(r).begin());

  // Split the all-ones row into z disjoint indicators.
  GfMatrix indicators(z, k);
  for (std::size_t i = 0; i < z; ++i)
    for (std::size_t j = i * per_group; j < (i + 1) * per_group; ++j)
      indicators(i, j) = base(0, j);

  // Combine every alpha consecutive global rows into one row per group.
  GfMatrix combined(z, k);
  for (std::size_t i = 0; i < z; ++i)
    for (std::size_t gamma = 0; gamma < alpha; ++gamma)
      gf::xor_block_acc(combined.row(i), globals.row(i * alpha + gamma));

  // Couple: local parity row = combined globals + data indicator.
  GfMatrix locals = combined;
  for (std::size_t i = 0; i < z; ++i) gf::xor_block_acc(locals.row(i), indicators.row(i));

  GroupLayout layout;
  for (std::size_t i = 0; i < z; ++i) {
    Group grp;
    for (std::size_t j = i * per_group; j < (i + 1) * per_group; ++j) grp.blocks.push_back(j);
    for (std::size_t t = i * alpha; t < (i + 1) * alpha; ++t) grp.blocks.push_back(k + t);
    grp.blocks.push_back(k + g + i);
    layout.groups.push_back(std::move(grp));
  }

  CodeSpec spec{Family::UniLRC, n, k, g, z, alpha, g, z, g + 2};
  return finish(spec, std::move(layout), stack_generator(k, globals, locals), points);
}

CodeDefinition build_alrc(std::size_t k, std::size_t group_data_size, std::size_t g) {
  require_field_size(k);
  if (group_data_size == 0 || k % group_data_size != 0)
    throw ParameterError("ALRC: group data size " + std::to_string(group_data_size) +
                         " must divide k = " + std::to_string(k));
  if (g == 0) throw ParameterError("ALRC: g must be positive");
  const std::size_t l = k / group_data_size;
  const auto points = default_eval_points(k);
  const GfMatrix globals = global_rows(points, g);

  GroupLayout layout;
  GfMatrix locals(l, k);
  for (std::size_t i = 0; i < l; ++i) {
    Group grp;
    for (std::size_t j = i * group_data_size; j < (i + 1) * group_data_size; ++j) {
      grp.blocks.push_back(j);
      locals(i, j) = 1;
    }
    grp.blocks.push_back(k + g + i);
    layout.groups.push_back(std::move(grp));
  }
  Group global_group;
  global_group.xor_repairable = false;
  for (std::size_t t = 0; t < g; ++t) global_group.blocks.push_back(k + t);
  layout.groups.push_back(std::move(global_group));

  CodeSpec spec{Family::ALRC, k + g + l, k, group_data_size, l, 0, g, l, g + 2};
  return finish(spec, std::move(layout), stack_generator(k, globals, locals), points);
}

CodeDefinition build_olrc(std::size_t k, std::size_t r, std::size_t g, std::size_t l) {
  require_field_size(k);
  if (l == 0 || k % l != 0)
    throw ParameterError("OLRC: l = " + std::to_string(l) + " must divide k = " + std::to_string(k));
  if (r != k / l + g)
    throw ParameterError("OLRC: locality r = " + std::to_string(r) + " must equal k/l + g = " +
                         std::to_string(k / l + g));
  if (g == 0) throw ParameterError("OLRC: g must be positive");
  const std::size_t per_group = k / l;
  const auto points = default_eval_points(k);
  const GfMatrix globals = global_rows(points, g);

  GroupLayout layout;
  for (std::size_t i = 0; i < l; ++i) {
    Group grp;
    for (std::size_t j = i * per_group; j < (i + 1) * per_group; ++j) grp.blocks.push_back(j);
    for (std::size_t t = 0; t < g; ++t) grp.blocks.push_back(k + t);
    grp.blocks.push_back(k + g + i);
    layout.groups.push_back(std::move(grp));
  }
  const GfMatrix locals = coupled_locals(k, globals, layout);
  CodeSpec spec{Family::OLRC, k + g + l, k, r, l, 0, g, l, g + 2};
  return finish(spec, std::move(layout), stack_generator(k, globals, locals), points);
}

CodeDefinition build_ulrc(std::size_t k, std::size_t small_locality,
                          std::size_t large_locality, std::size_t small_count,
                          std::size_t large_count) {
  require_field_size(k);
  if (small_locality == 0 || large_locality < small_locality)
    throw ParameterError("ULRC: need 0 < small locality <= large locality");
  const std::size_t l = small_count + large_count;
  if (l == 0) throw ParameterError("ULRC: at least one group is required");
  const std::size_t payload = small_count * small_locality + large_count * large_locality;
  if (payload <= k)
    throw ParameterError("ULRC: group sizes cover " + std::to_string(payload) +
                         " payload blocks, need more than k = " + std::to_string(k));
  const std::size_t g = payload - k;
  const auto points = default_eval_points(k);
  const GfMatrix globals = global_rows(points, g);

  GroupLayout layout;
  std::size_t next = 0;  // position in the payload sequence data..., globals...
  for (std::size_t i = 0; i < l; ++i) {
    const std::size_t size = i < small_count ? small_locality : large_locality;
    Group grp;
    for (std::size_t t = 0; t < size; ++t, ++next) grp.blocks.push_back(next);
    grp.blocks.push_back(k + g + i);
    layout.groups.push_back(std::move(grp));
  }
  const GfMatrix locals = coupled_locals(k, globals, layout);
  const std::size_t r = large_count > 0 ? large_locality : small_locality;
  CodeSpec spec{Family::ULRC, k + g + l, k, r, l, 0, g, l, g + 1};
  return finish(spec, std::move(layout), stack_generator(k, globals, locals), points);
}

CodeDefinition build_preset(std::string_view name) {
  const std::string s = lower(name);
  if (s == "unilrc-42") return build_unilrc(1, 6);
  if (s == "unilrc-136") return build_unilrc(2, 8);
  if (s == "unilrc-210") return build_unilrc(2, 10);
  if (s == "alrc-42") return build_alrc(30, 5, 6);
  if (s == "alrc-136") return build_alrc(112, 14, 16);
  if (s == "alrc-210") return build_alrc(180, 18, 20);
  if (s == "olrc-42") return build_olrc(30, 25, 10, 2);
  if (s == "olrc-136") return build_olrc(112, 78, 22, 2);
  if (s == "olrc-210") return build_olrc(180, 87, 27, 3);
  if (s == "ulrc-42") return build_ulrc(30, 7, 8, 3, 2);
  if (s == "ulrc-136") return build_ulrc(112, 18, 19, 4, 3);
  if (s == "ulrc-210") return build_ulrc(180, 22, 23, 6, 3);
  throw ParameterError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const char* fam : {"alrc", "olrc", "ulrc", "unilrc"})
    for (const char* n : {"42", "136", "210"}) out.push_back(std::string(fam) + "-" + n);
  return out;
}

std::vector<CodeDefinition> scheme_codes(std::size_t n) {
  if (n != 42 && n != 136 && n != 210)
    throw ParameterError("unknown scheme width " + std::to_string(n) + " (expected 42, 136 or 210)");
  std::vector<CodeDefinition> out;
  for (const char* fam : {"alrc", "olrc", "ulrc", "unilrc"})
    out.push_back(build_preset(std::string(fam) + "-" + std::to_string(n)));
  return out;
}

std::optional<std::string> check_invariants(const CodeDefinition& code) {
  const auto& s = code.spec;
  if (s.n != s.k + s.g + s.l) return "n != k + g + l";
  if (code.generator.rows() != s.n || code.generator.cols() != s.k)
    return "generator is not n x k";
  for (std::size_t i = 0; i < s.k; ++i)
    for (std::size_t j = 0; j < s.k; ++j)
      if (code.generator(i, j) != (i == j ? 1 : 0)) return "generator is not systematic";
  if (code.parity_check.rows() != s.n - s.k || code.parity_check.cols() != s.n)
    return "parity-check matrix has wrong shape";
  if (!(code.parity_check * code.generator).is_zero())
    return "parity-check nullity violated: H * G != 0";

  std::vector<std::size_t> cover(s.n, 0);
  std::size_t local_groups = 0;
  for (const auto& grp : code.layout.groups) {
    std::size_t locals = 0;
    for (BlockIndex b : grp.blocks) {
      if (b >= s.n) return "layout references block " + std::to_string(b) + " outside the stripe";
      ++cover[b];
      if (code.role(b) == BlockRole::Local) ++locals;
    }
    if (grp.xor_repairable) {
      ++local_groups;
      if (locals != 1) return "a repair group does not hold exactly one local parity";
      std::vector<gf::Element> sum(s.k, 0);
      for (BlockIndex b : grp.blocks) gf::xor_block_acc(sum, code.generator.row(b));
      if (std::any_of(sum.begin(), sum.end(), [](gf::Element e) { return e != 0; }))
        return "group-XOR identity violated for the group holding block " +
               std::to_string(grp.blocks.front());
    } else if (locals != 0) {
      return "a non-local group holds a local parity";
    }
  }
  if (local_groups != s.l) return "number of repair groups != l";
  for (BlockIndex b = 0; b < s.n; ++b) {
    if (cover[b] == 0) return "block " + std::to_string(b) + " belongs to no group";
    const bool shared_ok = s.family == Family::OLRC && code.role(b) == BlockRole::Global;
    if (cover[b] > 1 && !shared_ok)
      return "block " + std::to_string(b) + " belongs to more than one group";
  }

  if (s.family == Family::UniLRC) {
    const std::size_t a = s.alpha, z = s.z;
    if (s.n != a * z * z + z || s.k != a * z * z - a * z || s.r != a * z || s.g != a * z ||
        s.l != z || s.d != s.r + 2)
      return "UniLRC parameters do not follow n = az^2+z, k = az^2-az, r = g = az";
    for (const auto& grp : code.layout.groups) {
      if (grp.blocks.size() != s.r + 1) return "UniLRC group size != r + 1";
    }
  }
  return std::nullopt;
}

RateCheck rate_check(const CodeSpec& spec) {
  if (spec.family != Family::UniLRC) throw ParameterError("rate_check applies to UniLRC specs");
  const Rational r(as_int(spec.r));
  const Rational z(as_int(spec.z));
  const Rational a(as_int(spec.alpha));
  RateCheck out;
  out.rate = spec.rate();
  out.locality_form = (r / (r + 1)) * (Rational(1) - Rational(1) / z);
  out.alpha_form = Rational(1) - (a + 1) / (a * z + 1);
  return out;
}

bool parity_bound_check(const CodeSpec& spec) {
  if (spec.z == 0 || spec.n % spec.z != 0) return false;
  return spec.n - spec.k == spec.n / spec.z + spec.z - 1;
}

bool singleton_equality(const CodeSpec& spec, std::size_t d) {
  if (spec.n % (spec.r + 1) != 0 || d < 2) return false;
  return as_int(spec.n) - as_int(spec.k) - as_int(spec.n / (spec.r + 1)) == as_int(d) - 2;
}

}  // namespace unilrc
