#include "ahatc/extractor.hpp"

#include <algorithm>
#include <functional>

#include "ahatc/parser.hpp"

namespace ahatc {

namespace {

bool poly_less(const Polynomial& a, const Polynomial& b) {
  if (a.vars != b.vars) return a.vars < b.vars;
  return a.monomials < b.monomials;
}

Polynomial product(const std::vector<Polynomial>& factors, const std::vector<std::string>& vars) {
  Polynomial p = Polynomial::constant(vars, 1);
  for (const auto& f : factors) p = p * f;
  return p;
}

// Multiset difference whole \ part (part is a sub-multiset of whole).
std::vector<Polynomial> multiset_minus(const std::vector<Polynomial>& whole,
                                       const std::vector<Polynomial>& part) {
  std::vector<Polynomial> out;
  size_t j = 0;
  for (const auto& f : whole) {
    if (j < part.size() && part[j] == f) {
      j++;
      continue;
    }
    out.push_back(f);
  }
  return out;
}

std::vector<Polynomial> multiset_union_max(const std::vector<Polynomial>& a,
                                           const std::vector<Polynomial>& b) {
  std::vector<Polynomial> out;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (i == a.size()) {
      out.push_back(b[j++]);
    } else if (j == b.size()) {
      out.push_back(a[i++]);
    } else if (a[i] == b[j]) {
      out.push_back(a[i]);
      i++;
      j++;
    } else if (poly_less(a[i], b[j])) {
      out.push_back(a[i++]);
    } else {
      out.push_back(b[j++]);
    }
  }
  return out;
}

void sort_factors(std::vector<Polynomial>& f) { std::sort(f.begin(), f.end(), poly_less); }

Integer lcm_int(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return a / g * b;
}

// Shared-denominator symbolic vector: nums[i] / prod(den).
struct SymVec {
  std::vector<Polynomial> nums;
  std::vector<Polynomial> den;  // sorted factor multiset
};

// +1: nonnegative on all of N^m (coefficientwise); -1: nonpositive; 0: open.
int provable_sign(const Polynomial& p) {
  bool nonneg = true, nonpos = true;
  for (const auto& [e, c] : p.monomials) {
    if (c < 0) nonneg = false;
    if (c > 0) nonpos = false;
  }
  if (nonneg) return 1;
  if (nonpos) return -1;
  return 0;
}

}  // namespace

Polynomial SymbolicRational::denominator() const { return product(den_factors, num.vars); }

bool is_certified_positive(const Polynomial& p, const std::vector<bool>& support) {
  bool positive_witness = false;
  for (const auto& [e, c] : p.monomials) {
    if (c < 0) return false;
    bool supported = true;
    for (size_t i = 0; i < e.size(); i++)
      if (e[i] > 0 && (i >= support.size() || !support[i])) supported = false;
    if (supported && c > 0) positive_witness = true;
  }
  return positive_witness;
}

Polynomial clear_denominators(const SymbolicRational& v, const std::vector<bool>& support,
                              const std::vector<std::string>& vars) {
  (void)vars;
  for (const auto& f : v.den_factors)
    if (!is_certified_positive(f, support))
      throw Error("clear_denominators: factor '" + f.to_string() +
                  "' is not certified positive under the occurrence pattern");
  return v.num;
}

Polynomial cross_difference(const SymbolicRational& a, const SymbolicRational& b) {
  if (a.den_factors == b.den_factors) return a.num - b.num;
  std::vector<Polynomial> common = multiset_union_max(a.den_factors, b.den_factors);
  Polynomial scale_a = product(multiset_minus(common, a.den_factors), a.num.vars);
  Polynomial scale_b = product(multiset_minus(common, b.den_factors), b.num.vars);
  return a.num * scale_a - b.num * scale_b;
}

bool GuardAtom::holds(const std::vector<Integer>& point) const {
  Integer v = poly.eval(point);
  switch (kind) {
    case Kind::Gt0: return v > 0;
    case Kind::Ge0: return v >= 0;
    case Kind::Eq0: return v == 0;
  }
  return false;
}

bool ExtractionBranch::guards_hold(const ParikhVector& v) const {
  std::vector<Integer> point = to_integers(v);
  for (const auto& g : guards)
    if (!g.holds(point)) return false;
  return true;
}

namespace {

struct Ctx {
  std::vector<bool> support;
  std::vector<Letter> classes;
  std::vector<Polynomial> counts;  // per class: x_i, or 1 for the end marker
  std::vector<GuardAtom> guards;
  std::vector<ParikhVector> grid;  // exact-support vectors, sum <= prune bound
  std::vector<char> alive;
  long long alive_count = 0;
  std::vector<std::vector<std::vector<int>>> argmax;  // [layer][class] -> class indices
  std::vector<std::vector<std::vector<int>>> relu;    // [layer][class] -> sign codes
};

class Engine {
 public:
  Engine(const AhatModel& model, long long budget, long long prune_bound)
      : model_(model), budget_(budget), prune_bound_(prune_bound) {
    vars_ = count_variables(model.alphabet);
    m_ = model.alphabet.size();
  }

  ExtractionResult run() {
    model_.validate();
    if (model_.layers.empty()) throw Error("extract: model has no layers");
    if (m_ > 16) throw Error("extract: alphabets beyond 16 letters are not supported");
    for (std::uint64_t mask = 1; mask < (1ull << m_); mask++) explore_support(mask);

    ExtractionResult result;
    result.branches_explored = explored_;
    result.branches_pruned = pruned_;
    std::vector<SemiAlgNode> disjuncts;
    for (const auto& br : branches_) {
      if (!br.accepting_at_desk_scale) continue;
      std::vector<SemiAlgNode> atoms;
      for (const auto& g : br.guards) atoms.push_back(guard_to_atom(g));
      atoms.push_back(guard_to_atom(br.payload));
      disjuncts.push_back(SemiAlgNode::conj(std::move(atoms)));
    }
    SemiAlgNode root =
        disjuncts.empty() ? SemiAlgNode::atom(Polynomial::constant(vars_, -1), Rel::Gt)
                          : SemiAlgNode::disj(std::move(disjuncts));
    result.formula = normalize_semialg(SemiAlgFormula{vars_, std::move(root)});
    result.branches = std::move(branches_);
    return result;
  }

 private:
  const AhatModel& model_;
  long long budget_;
  long long prune_bound_;
  std::vector<std::string> vars_;
  size_t m_ = 0;
  long long explored_ = 0;
  long long pruned_ = 0;
  std::vector<ExtractionBranch> branches_;

  static SemiAlgNode guard_to_atom(const GuardAtom& g) {
    switch (g.kind) {
      case GuardAtom::Kind::Gt0: return SemiAlgNode::atom(g.poly, Rel::Gt);
      case GuardAtom::Kind::Ge0: return SemiAlgNode::atom(g.poly, Rel::Ge);
      case GuardAtom::Kind::Eq0: return SemiAlgNode::atom(g.poly, Rel::Eq);
    }
    throw Error("unreachable");
  }

  void budget_check() {
    if (explored_ + pruned_ > budget_)
      throw Error("extract: branch budget exceeded (explored " + std::to_string(explored_) +
                  " + pruned " + std::to_string(pruned_) + " > budget " + std::to_string(budget_) +
                  "; the combinatorial bound is 2^((m+1)^2 a + r) over a attention layers and r "
                  "relu nodes)");
  }

  void build_grid(Ctx& ctx) {
    ParikhVector v(m_, 0);
    std::vector<size_t> idx;
    for (size_t i = 0; i < m_; i++)
      if (ctx.support[i]) idx.push_back(i);
    std::function<void(size_t, long long)> rec = [&](size_t k, long long budget) {
      if (k == idx.size()) {
        ctx.grid.push_back(v);
        return;
      }
      long long reserve = static_cast<long long>(idx.size() - k - 1);
      for (long long c = 1; c + reserve <= budget; c++) {
        v[idx[k]] = c;
        rec(k + 1, budget - c);
      }
      v[idx[k]] = 0;
    };
    rec(0, prune_bound_);
    ctx.alive.assign(ctx.grid.size(), 1);
    ctx.alive_count = static_cast<long long>(ctx.grid.size());
  }

  // Applies a guard; statically true guards are dropped, statically false or
  // grid-infeasible guards kill the branch.
  bool apply_guard(Ctx& ctx, GuardAtom g) {
    if (g.poly.is_constant()) {
      Integer c = g.poly.constant_term();
      switch (g.kind) {
        case GuardAtom::Kind::Gt0: return c > 0;
        case GuardAtom::Kind::Ge0: return c >= 0;
        case GuardAtom::Kind::Eq0: return c == 0;
      }
    }
    int sign = provable_sign(g.poly);
    if (g.kind == GuardAtom::Kind::Ge0 && sign == 1) return true;
    if (g.kind == GuardAtom::Kind::Gt0 && sign == 1 && is_certified_positive(g.poly, ctx.support))
      return true;
    long long alive = 0;
    for (size_t i = 0; i < ctx.grid.size(); i++) {
      if (!ctx.alive[i]) continue;
      if (g.holds(to_integers(ctx.grid[i])))
        alive++;
      else
        ctx.alive[i] = 0;
    }
    ctx.alive_count = alive;
    ctx.guards.push_back(std::move(g));
    return alive > 0;
  }

  void explore_support(std::uint64_t mask) {
    Ctx ctx;
    ctx.support.assign(m_, false);
    for (size_t i = 0; i < m_; i++)
      if (mask & (1ull << i)) ctx.support[i] = true;
    for (size_t i = 0; i < m_; i++)
      if (ctx.support[i]) {
        ctx.classes.push_back(model_.alphabet[i]);
        ctx.counts.push_back(Polynomial::variable(vars_, i));
      }
    if (model_.uses_end_marker) {
      ctx.classes.push_back(model_.end_marker);
      ctx.counts.push_back(Polynomial::constant(vars_, 1));
    }
    build_grid(ctx);
    if (ctx.grid.empty())
      throw Error("extract: prune bound too small to witness an occurrence pattern");
    // Occurrence constraints are recorded unconditionally: they make branches
    // of different patterns disjoint. The grid is exact-support already.
    for (size_t i = 0; i < m_; i++)
      ctx.guards.push_back(GuardAtom{Polynomial::variable(vars_, i),
                                     ctx.support[i] ? GuardAtom::Kind::Gt0 : GuardAtom::Kind::Eq0});

    // Initial class vectors: the embeddings as constants over a scalar
    // denominator clearing their fractions.
    std::vector<SymVec> state;
    for (const auto& c : ctx.classes) {
      RatVec e = model_.embedding.at(c);
      if (model_.constant_pe) e = vec_add(e, *model_.constant_pe);
      Integer den = 1;
      for (const auto& q : e) den = lcm_int(den, q.get_den());
      SymVec v;
      for (const auto& q : e) {
        Rational scaled = q * Rational(den);
        v.nums.push_back(Polynomial::constant(vars_, scaled.get_num()));
      }
      if (den != 1) v.den.push_back(Polynomial::constant(vars_, den));
      state.push_back(std::move(v));
    }
    process_layer(0, std::move(state), std::move(ctx));
  }

  SymVec affine_apply(const AffineMap& f, const SymVec& v) const {
    Integer lcm = 1;
    for (const auto& q : f.matrix.data) lcm = lcm_int(lcm, q.get_den());
    for (const auto& q : f.offset) lcm = lcm_int(lcm, q.get_den());
    Polynomial den_product = product(v.den, vars_);
    SymVec out;
    out.den = v.den;
    if (lcm != 1) {
      out.den.push_back(Polynomial::constant(vars_, lcm));
      sort_factors(out.den);
    }
    for (size_t r = 0; r < f.out_dim(); r++) {
      Polynomial acc(vars_);
      for (size_t c = 0; c < f.in_dim(); c++) {
        const Rational& q = f.matrix.at(r, c);
        if (q == 0) continue;
        Rational scaled = q * Rational(lcm);
        acc = acc + v.nums[c] * scaled.get_num();
      }
      if (f.offset[r] != 0) {
        Rational scaled = f.offset[r] * Rational(lcm);
        acc = acc + den_product * scaled.get_num();
      }
      out.nums.push_back(std::move(acc));
    }
    return out;
  }

  SymVec concat_sym(const SymVec& a, const SymVec& b) const {
    SymVec out;
    if (a.den == b.den) {
      out.den = a.den;
      out.nums = a.nums;
      out.nums.insert(out.nums.end(), b.nums.begin(), b.nums.end());
      return out;
    }
    out.den = multiset_union_max(a.den, b.den);
    Polynomial scale_a = product(multiset_minus(out.den, a.den), vars_);
    Polynomial scale_b = product(multiset_minus(out.den, b.den), vars_);
    for (const auto& p : a.nums) out.nums.push_back(p * scale_a);
    for (const auto& p : b.nums) out.nums.push_back(p * scale_b);
    return out;
  }

  SymVec attention_average(const std::vector<SymVec>& values, const std::vector<int>& chosen,
                           const Ctx& ctx) const {
    Polynomial weight_sum(vars_);
    for (int c : chosen) weight_sum = weight_sum + ctx.counts[c];
    bool same_den = true;
    for (int c : chosen)
      if (values[c].den != values[chosen[0]].den) same_den = false;
    SymVec out;
    const size_t k = values[chosen[0]].nums.size();
    if (same_den) {
      out.den = values[chosen[0]].den;
      for (size_t r = 0; r < k; r++) {
        Polynomial acc(vars_);
        for (int c : chosen) acc = acc + ctx.counts[c] * values[c].nums[r];
        out.nums.push_back(std::move(acc));
      }
    } else {
      std::vector<Polynomial> common;
      for (int c : chosen) common = multiset_union_max(common, values[c].den);
      out.den = common;
      for (size_t r = 0; r < k; r++) {
        Polynomial acc(vars_);
        for (int c : chosen) {
          Polynomial scale = product(multiset_minus(common, values[c].den), vars_);
          acc = acc + ctx.counts[c] * values[c].nums[r] * scale;
        }
        out.nums.push_back(std::move(acc));
      }
    }
    out.den.push_back(weight_sum);
    sort_factors(out.den);
    return out;
  }

  void process_layer(size_t l, std::vector<SymVec> state, Ctx ctx) {
    if (l == model_.layers.size()) {
      finalize(std::move(state), std::move(ctx));
      return;
    }
    const AhaLayer& layer = model_.layers[l];
    const size_t nc = ctx.classes.size();
    std::vector<SymVec> keys, queries, values;
    for (size_t c = 0; c < nc; c++) {
      keys.push_back(affine_apply(layer.key, state[c]));
      queries.push_back(affine_apply(layer.query, state[c]));
      values.push_back(affine_apply(layer.value, state[c]));
    }
    std::vector<std::vector<SymbolicRational>> scores(nc, std::vector<SymbolicRational>(nc));
    for (size_t c = 0; c < nc; c++)
      for (size_t d = 0; d < nc; d++) {
        SymbolicRational s;
        Polynomial acc(vars_);
        for (size_t r = 0; r < keys[c].nums.size(); r++)
          acc = acc + keys[c].nums[r] * queries[d].nums[r];
        s.num = std::move(acc);
        s.den_factors = keys[c].den;
        s.den_factors.insert(s.den_factors.end(), queries[d].den.begin(), queries[d].den.end());
        sort_factors(s.den_factors);
        scores[c][d] = std::move(s);
      }

    ctx.argmax.emplace_back(nc);
    ctx.relu.emplace_back(nc);

    // Per attending class, fix an argmax set. Statically decided comparisons
    // (uniform layers, scores determined by embeddings) never branch.
    std::function<void(size_t, std::vector<SymVec>, Ctx)> choose =
        [&](size_t c, std::vector<SymVec> attn, Ctx cur) {
          if (c == nc) {
            run_nets(l, state, std::move(attn), std::move(cur));
            return;
          }
          std::vector<std::vector<Polynomial>> diff(nc, std::vector<Polynomial>(nc));
          bool all_constant = true;
          for (size_t i = 0; i < nc; i++)
            for (size_t j = 0; j < nc; j++)
              if (i != j) {
                diff[i][j] = cross_difference(scores[c][i], scores[c][j]);
                if (!diff[i][j].is_constant()) all_constant = false;
              }
          if (all_constant) {
            std::vector<int> best = {0};
            for (size_t d = 1; d < nc; d++) {
              Integer delta = diff[d][best[0]].constant_term();
              if (delta > 0)
                best = {static_cast<int>(d)};
              else if (delta == 0)
                best.push_back(static_cast<int>(d));
            }
            cur.argmax.back()[c] = best;
            attn.push_back(attention_average(values, best, cur));
            choose(c + 1, std::move(attn), std::move(cur));
            return;
          }
          for (std::uint64_t set = 1; set < (1ull << nc); set++) {
            std::vector<int> chosen;
            for (size_t d = 0; d < nc; d++)
              if (set & (1ull << d)) chosen.push_back(static_cast<int>(d));
            Ctx branch_ctx = cur;
            bool feasible = true;
            // Within the set scores tie; outside they are strictly beaten.
            for (size_t t = 1; t < chosen.size() && feasible; t++)
              feasible = apply_guard(branch_ctx,
                                     GuardAtom{diff[chosen[0]][chosen[t]], GuardAtom::Kind::Eq0});
            for (size_t d = 0; d < nc && feasible; d++) {
              if (set & (1ull << d)) continue;
              feasible =
                  apply_guard(branch_ctx, GuardAtom{diff[chosen[0]][d], GuardAtom::Kind::Gt0});
            }
            if (!feasible) {
              pruned_++;
              budget_check();
              continue;
            }
            branch_ctx.argmax.back()[c] = chosen;
            std::vector<SymVec> next = attn;
            next.push_back(attention_average(values, chosen, branch_ctx));
            choose(c + 1, std::move(next), std::move(branch_ctx));
          }
        };
    choose(0, {}, std::move(ctx));
  }

  void run_nets(size_t l, const std::vector<SymVec>& pre_state, std::vector<SymVec> attn,
                Ctx ctx) {
    const AhaLayer& layer = model_.layers[l];
    const size_t nc = ctx.classes.size();

    // Sequential over classes; within a class, stage by stage; within a relu
    // stage, component by component with sign branching.
    std::function<void(size_t, std::vector<SymVec>, Ctx)> per_class;
    std::function<void(size_t, size_t, SymVec, const std::vector<SymVec>&, Ctx)> per_stage;

    per_class = [&](size_t c, std::vector<SymVec> done, Ctx cur) {
      if (c == nc) {
        process_layer(l + 1, std::move(done), std::move(cur));
        return;
      }
      SymVec input = concat_sym(pre_state[c], attn[c]);
      per_stage(c, 0, std::move(input), done, std::move(cur));
    };

    per_stage = [&](size_t c, size_t s, SymVec v, const std::vector<SymVec>& done, Ctx cur) {
      const auto& stages = layer.net.stages;
      if (s == stages.size()) {
        std::vector<SymVec> next = done;
        next.push_back(std::move(v));
        per_class(c + 1, std::move(next), std::move(cur));
        return;
      }
      SymVec w = affine_apply(stages[s].map, v);
      if (stages[s].act == Activation::Identity) {
        per_stage(c, s + 1, std::move(w), done, std::move(cur));
        return;
      }
      std::function<void(size_t, SymVec, Ctx)> per_comp = [&](size_t i, SymVec u, Ctx c2) {
        if (i == u.nums.size()) {
          per_stage(c, s + 1, std::move(u), done, std::move(c2));
          return;
        }
        const Polynomial num = u.nums[i];
        if (num.is_constant()) {
          bool nonneg = num.constant_term() >= 0;
          c2.relu.back()[c].push_back(nonneg ? 2 : -2);
          if (!nonneg) u.nums[i] = Polynomial(vars_);
          per_comp(i + 1, std::move(u), std::move(c2));
          return;
        }
        int sign = provable_sign(num);
        if (sign == 1) {
          c2.relu.back()[c].push_back(2);
          per_comp(i + 1, std::move(u), std::move(c2));
          return;
        }
        if (sign == -1) {
          c2.relu.back()[c].push_back(-2);
          u.nums[i] = Polynomial(vars_);
          per_comp(i + 1, std::move(u), std::move(c2));
          return;
        }
        {
          Ctx pos_ctx = c2;
          if (apply_guard(pos_ctx, GuardAtom{num, GuardAtom::Kind::Gt0})) {
            pos_ctx.relu.back()[c].push_back(1);
            per_comp(i + 1, u, std::move(pos_ctx));
          } else {
            pruned_++;
            budget_check();
          }
        }
        {
          Ctx neg_ctx = std::move(c2);
          if (apply_guard(neg_ctx, GuardAtom{-num, GuardAtom::Kind::Ge0})) {
            neg_ctx.relu.back()[c].push_back(-1);
            u.nums[i] = Polynomial(vars_);
            per_comp(i + 1, std::move(u), std::move(neg_ctx));
          } else {
            pruned_++;
            budget_check();
          }
        }
      };
      per_comp(0, std::move(w), std::move(cur));
    };

    per_class(0, {}, std::move(ctx));
  }

  void finalize(std::vector<SymVec> state, Ctx ctx) {
    explored_++;
    budget_check();
    // Acceptance is read at the last position: the end marker when present,
    // otherwise the last occurring letter (canonical-word order).
    const size_t accept_class = ctx.classes.size() - 1;
    const SymVec& out = state[accept_class];
    SymbolicRational first{out.nums[0], out.den};
    GuardAtom payload{clear_denominators(first, ctx.support, vars_), GuardAtom::Kind::Gt0};

    ExtractionBranch br;
    br.support = ctx.support;
    br.classes = ctx.classes;
    br.argmax = ctx.argmax;
    br.relu = ctx.relu;
    br.guards = ctx.guards;
    br.payload = payload;
    for (size_t i = 0; i < ctx.grid.size() && !br.accepting_at_desk_scale; i++)
      if (ctx.alive[i] && payload.holds(to_integers(ctx.grid[i])))
        br.accepting_at_desk_scale = true;
    branches_.push_back(std::move(br));
  }
};

}  // namespace

ExtractionResult extract_semialg(const AhatModel& model, long long branch_budget,
                                 long long prune_bound) {
  Engine engine(model, branch_budget, prune_bound);
  return engine.run();
}

QfpaExtractionResult extract_qfpa_one_layer(const AhatModel& model, long long branch_budget,
                                            long long prune_bound) {
  if (model.layers.size() != 1)
    throw Error("extract_qfpa_one_layer: model has " + std::to_string(model.layers.size()) +
                " attention layers, need exactly 1");
  if (!model.uses_end_marker)
    throw Error("extract_qfpa_one_layer: model must use an end marker");
  ExtractionResult generic = extract_semialg(model, branch_budget, prune_bound);

  std::vector<std::string> vars = count_variables(model.alphabet);
  auto atom_to_literals = [&](const GuardAtom& g) -> std::vector<QfpaNode> {
    if (g.poly.degree() > 1)
      throw Error("extract_qfpa_one_layer: nonlinear guard '" + g.poly.to_string() + "'");
    std::vector<Rational> coeffs(vars.size(), Rational(0));
    Rational constant(0);
    for (const auto& [e, c] : g.poly.monomials) {
      bool is_const = true;
      for (size_t i = 0; i < e.size(); i++)
        if (e[i] == 1) {
          coeffs[i] = Rational(c);
          is_const = false;
        }
      if (is_const) constant = Rational(c);
    }
    auto negated_coeffs = [&]() {
      std::vector<Rational> out(coeffs.size());
      for (size_t i = 0; i < coeffs.size(); i++) out[i] = -coeffs[i];
      return out;
    };
    switch (g.kind) {
      case GuardAtom::Kind::Gt0:  // p > 0  <=>  !(c.x <= -c0)
        return {QfpaNode::literal(LinearInequality{coeffs, -constant}, true)};
      case GuardAtom::Kind::Ge0:  // p >= 0  <=>  -c.x <= c0
        return {QfpaNode::literal(LinearInequality{negated_coeffs(), constant}, false)};
      case GuardAtom::Kind::Eq0: {
        std::vector<QfpaNode> both;
        both.push_back(QfpaNode::literal(LinearInequality{coeffs, -constant}, false));
        both.push_back(QfpaNode::literal(LinearInequality{negated_coeffs(), constant}, false));
        return both;
      }
    }
    throw Error("unreachable");
  };

  std::vector<QfpaNode> disjuncts;
  for (const auto& br : generic.branches) {
    if (!br.accepting_at_desk_scale) continue;
    std::vector<QfpaNode> atoms;
    for (const auto& g : br.guards)
      for (auto& lit : atom_to_literals(g)) atoms.push_back(std::move(lit));
    for (auto& lit : atom_to_literals(br.payload)) atoms.push_back(std::move(lit));
    disjuncts.push_back(QfpaNode::conj(std::move(atoms)));
  }
  QfpaNode root =
      disjuncts.empty()
          ? QfpaNode::literal(
                LinearInequality{std::vector<Rational>(vars.size(), Rational(0)), Rational(-1)},
                false)
          : QfpaNode::disj(std::move(disjuncts));
  QfpaExtractionResult result;
  result.formula = QfpaFormula{vars, std::move(root)};
  result.branches_explored = generic.branches_explored;
  result.branches_pruned = generic.branches_pruned;
  return result;
}

}  // namespace ahatc
