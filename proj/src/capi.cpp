#include "wilson/wilson.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wilson/report.hpp"

struct wilson_context {
  explicit wilson_context(std::uint64_t budget) : engine(budget), catalog(engine) {}
  wilson::Engine engine;
  wilson::Catalog catalog;
};

namespace {

thread_local std::string last_error;

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

wilson_status fail(wilson_status status, const std::string &message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions to status codes.
template <class F>
wilson_status guarded(F &&body) {
  try {
    last_error.clear();
    return body();
  } catch (const wilson::ResourceError &e) {
    return fail(WILSON_RESOURCE_EXHAUSTED, e.what());
  } catch (const std::invalid_argument &e) {
    return fail(WILSON_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error &e) {
    return fail(WILSON_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range &e) {
    return fail(WILSON_INVALID_ARGUMENT, e.what());
  } catch (const std::exception &e) {
    return fail(WILSON_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(WILSON_INTERNAL_ERROR, "unknown error");
  }
}

void require(bool ok, const char *message) {
  if (!ok) throw std::invalid_argument(message);
}

std::string text(const char *s, const char *what) {
  if (!s) throw std::invalid_argument(std::string(what) + " must not be null");
  return s;
}

wilson::Element parse_word(wilson_context &ctx, const wilson::GeneratingSet &gs,
                           const std::string &word) {
  std::istringstream in(word);
  std::string tok;
  wilson::Element e = ctx.engine.identity();
  while (in >> tok) {
    if (tok == "1" || tok == "e" || tok == "ε") continue;
    bool inverse = false;
    if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
      inverse = true;
      tok.resize(tok.size() - 3);
    }
    const int k = gs.find(tok);
    if (k < 0) throw std::invalid_argument("unknown symbol '" + tok + "' in " + gs.name);
    const wilson::Element &g = gs.symbols[k].element;
    e = ctx.engine.multiply(e, inverse ? ctx.engine.inverse(g) : g);
  }
  return e;
}

wilson::BallOptions ball_options(int threads, bool edges) {
  wilson::BallOptions opts;
  opts.threads = threads < 1 ? 1 : threads;
  opts.with_edges = edges;
  return opts;
}

std::vector<std::uint64_t> sizes_for(wilson_context &ctx, const char *genset, int radius,
                                     wilson_convention convention, int threads) {
  require(radius >= 0, "radius must be non-negative");
  const auto &gs = ctx.catalog.by_name(text(genset, "genset"));
  return wilson::ball_sizes(ctx.engine, gs, radius,
                            convention == WILSON_BALL_EXACTLY ? wilson::BallConvention::Exactly
                                                              : wilson::BallConvention::AtMost,
                            ball_options(threads, false));
}

}  // namespace

extern "C" {

const char *wilson_version(void) { return wilson::kVersion; }

const char *wilson_last_error(void) { return last_error.c_str(); }

void wilson_string_free(char *s) { std::free(s); }

wilson_status wilson_context_create(uint64_t state_budget, wilson_context **out) {
  return guarded([&] {
    require(out != nullptr, "output pointer must not be null");
    *out = new wilson_context(state_budget ? state_budget : wilson::Engine::kDefaultStateBudget);
    return WILSON_OK;
  });
}

void wilson_context_destroy(wilson_context *ctx) { delete ctx; }

uint64_t wilson_context_state_budget(const wilson_context *ctx) {
  return ctx ? ctx->engine.state_budget() : 0;
}

wilson_status wilson_verify_all(wilson_context *ctx, int threads, char **json) {
  return guarded([&] {
    require(ctx && json, "null argument");
    const auto res = wilson::verify_all(ctx->engine.state_budget(), threads < 1 ? 1 : threads);
    *json = dup_string(res.json);
    if (!res.pass) return fail(WILSON_VERDICT_FAILED, std::to_string(res.failed) + " claim(s) failed");
    return WILSON_OK;
  });
}

wilson_status wilson_catalog(wilson_context *ctx, char **json) {
  return guarded([&] {
    require(ctx && json, "null argument");
    bool pass = true;
    for (const auto &claim : ctx->catalog.identity_catalog())
      pass = pass && ctx->catalog.check(claim).pass;
    *json = dup_string(wilson::catalog_json(ctx->catalog));
    return pass ? WILSON_OK : fail(WILSON_VERDICT_FAILED, "catalog claim failed");
  });
}

wilson_status wilson_ball(wilson_context *ctx, const char *genset, int radius,
                          wilson_format format, int threads, char **out) {
  return guarded([&] {
    require(ctx && out, "null argument");
    require(radius >= 0, "radius must be non-negative");
    require(format == WILSON_FORMAT_CSV || format == WILSON_FORMAT_DOT,
            "ball output is csv or dot");
    const auto &gs = ctx->catalog.by_name(text(genset, "genset"));
    const wilson::Ball ball =
        wilson::enumerate_ball(ctx->engine, gs, radius, ball_options(threads, format == WILSON_FORMAT_DOT));
    *out = dup_string(format == WILSON_FORMAT_DOT ? wilson::ball_dot(ball) : wilson::ball_csv(ball));
    return WILSON_OK;
  });
}

wilson_status wilson_ball_sizes(wilson_context *ctx, const char *genset, int radius,
                                wilson_convention convention, int threads, uint64_t *sizes) {
  return guarded([&] {
    require(ctx && sizes, "null argument");
    const auto s = sizes_for(*ctx, genset, radius, convention, threads);
    for (std::size_t i = 0; i < s.size(); ++i) sizes[i] = s[i];
    return WILSON_OK;
  });
}

wilson_status wilson_growth(wilson_context *ctx, const char *genset, int radius,
                            wilson_convention convention, int threads, char **csv) {
  return guarded([&] {
    require(ctx && csv, "null argument");
    const auto s = sizes_for(*ctx, genset, radius, convention, threads);
    *csv = dup_string(wilson::growth_csv(wilson::growth_estimates(s)));
    return WILSON_OK;
  });
}

wilson_status wilson_delta_stats(wilson_context *ctx, const char *genset, int radius, double eta,
                                 int threads, char **csv) {
  return guarded([&] {
    require(ctx && csv, "null argument");
    require(radius >= 1, "radius must be positive");
    const auto &gs = ctx->catalog.by_name(text(genset, "genset"));
    const wilson::Ball ball = wilson::enumerate_ball(ctx->engine, gs, radius, ball_options(threads, false));
    const auto words = wilson::geodesic_iwords(ball);
    const auto rows = wilson::geodesic_delta_stats(words, eta, radius);
    *csv = dup_string(wilson::delta_stats_csv(eta, rows));
    for (const auto &r : rows)
      if (!r.within_bound) return fail(WILSON_VERDICT_FAILED, "count above bound at n = " + std::to_string(r.n));
    return WILSON_OK;
  });
}

wilson_status wilson_lemma30(wilson_context *ctx, int max_n, char **csv) {
  return guarded([&] {
    require(ctx && csv, "null argument");
    const auto r = wilson::verify_lemma30(max_n);
    *csv = dup_string(wilson::lemma30_csv(r));
    return r.all_within_30 ? WILSON_OK : fail(WILSON_VERDICT_FAILED, "a count exceeds 30");
  });
}

wilson_status wilson_lambda(wilson_context *ctx, int steps, double tol, char **csv) {
  return guarded([&] {
    require(ctx && csv, "null argument");
    require(tol > 0, "tolerance must be positive");
    *csv = dup_string(wilson::lambda_csv(wilson::lambda_sequence(steps, tol)));
    return WILSON_OK;
  });
}

wilson_status wilson_curves(wilson_context *ctx, double lambda, char **csv) {
  return guarded([&] {
    require(ctx && csv, "null argument");
    require(lambda >= 1, "lambda must be at least 1");
    *csv = dup_string(wilson::curves_csv(wilson::crossing_curves(lambda)));
    return WILSON_OK;
  });
}

wilson_status wilson_growth_bound(double lambda, double tol, double *out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = wilson::eval_growth_bound(lambda, tol);
    return WILSON_OK;
  });
}

wilson_status wilson_free_monoid(wilson_context *ctx, int length, int all_pairs, char **json) {
  return guarded([&] {
    require(ctx && json, "null argument");
    require(length >= 1, "length must be at least 1");
    const int refine = length < 5 ? length : 5;
    std::vector<wilson::FreeMonoidReport> reports;
    if (all_pairs) {
      const auto sw = wilson::find_swappers(wilson::fano::psl32(), wilson::Point(1), wilson::Point(2));
      for (const auto &u : sw)
        for (const auto &v : sw)
          if (u != v)
            reports.push_back(wilson::free_monoid_check(
                ctx->catalog, ctx->catalog.free_quadruple(u, v), length, refine));
    } else {
      reports.push_back(
          wilson::free_monoid_check(ctx->catalog, ctx->catalog.free_quadruple(), length, refine));
    }
    *json = dup_string(wilson::free_monoid_json(reports));
    for (const auto &r : reports)
      if (!r.pass()) return fail(WILSON_VERDICT_FAILED, r.counterexample);
    return WILSON_OK;
  });
}

wilson_status wilson_local_iso(wilson_context *ctx, int radius, int max_n, char **json) {
  return guarded([&] {
    require(ctx && json, "null argument");
    require(max_n >= 1, "max_n must be at least 1");
    const auto r = wilson::find_min_n_local_iso(ctx->catalog, radius, max_n);
    *json = dup_string(wilson::local_iso_json({r}));
    return r.n ? WILSON_OK : fail(WILSON_VERDICT_FAILED, "not-found");
  });
}

wilson_status wilson_act(wilson_context *ctx, const char *genset, const char *word,
                         const char *string, char **out) {
  return guarded([&] {
    require(ctx && out, "null argument");
    const auto &gs = ctx->catalog.by_name(text(genset, "genset"));
    const wilson::Element e = parse_word(*ctx, gs, text(word, "word"));
    *out = dup_string(ctx->engine.act(e, text(string, "string")));
    return WILSON_OK;
  });
}

wilson_status wilson_portrait(wilson_context *ctx, const char *genset, const char *word,
                              int depth, wilson_format format, char **out) {
  return guarded([&] {
    require(ctx && out, "null argument");
    require(depth >= 0 && depth <= 6, "portrait depth must lie in 0..6");
    require(format == WILSON_FORMAT_JSON || format == WILSON_FORMAT_TEXT,
            "portrait output is json or text");
    const auto &gs = ctx->catalog.by_name(text(genset, "genset"));
    const wilson::Element e = parse_word(*ctx, gs, text(word, "word"));
    const wilson::Portrait p = ctx->engine.portrait(e, depth);
    *out = dup_string(format == WILSON_FORMAT_JSON ? wilson::portrait_to_json(p)
                                                    : wilson::portrait_to_text(p));
    return WILSON_OK;
  });
}

}  // extern "C"
