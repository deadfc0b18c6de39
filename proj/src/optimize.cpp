// Copyright 2026 The mtdlcu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mtdlcu/optimize.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>

#include <cmath>
#include <limits>

namespace mtdlcu {

namespace {

constexpr double kGold = 1.618033988749895;

struct LineContext {
  const Objective* f;
  const std::vector<double>* x;
  const std::vector<double>* d;
  std::vector<double> trial;
  int* evaluations;
  double best_f;
  std::vector<double> best_x;
};

double line_value(double t, void* p) {
  auto* c = static_cast<LineContext*>(p);
  for (std::size_t i = 0; i < c->trial.size(); ++i) c->trial[i] = (*c->x)[i] + t * (*c->d)[i];
  ++*c->evaluations;
  const double v = (*c->f)(c->trial);
  if (v < c->best_f) {
    c->best_f = v;
    c->best_x = c->trial;
  }
  return v;
}

// Returns the step taken along d; ctx.best_x / best_f hold the best point seen.
void line_minimize(LineContext& ctx, double f0, double step, int budget) {
  const int start = *ctx.evaluations;
  double a = 0.0, fa = f0;
  double b = step, fb = line_value(b, &ctx);
  if (fb > fa) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = b + kGold * (b - a), fc = line_value(c, &ctx);
  while (fc < fb && *ctx.evaluations - start < budget) {
    a = b;
    fa = fb;
    b = c;
    fb = fc;
    c = b + kGold * (b - a);
    fc = line_value(c, &ctx);
  }
  if (!(fb < fa && fb < fc)) return;  // flat or budget hit before bracketing
  double lo = std::min(a, c), hi = std::max(a, c);
  double flo = a < c ? fa : fc, fhi = a < c ? fc : fa;

  gsl_function fn{&line_value, &ctx};
  gsl_min_fminimizer* s = gsl_min_fminimizer_alloc(gsl_min_fminimizer_brent);
  gsl_error_handler_t* old = gsl_set_error_handler_off();
  if (gsl_min_fminimizer_set_with_values(s, &fn, b, fb, lo, flo, hi, fhi) == GSL_SUCCESS) {
    for (int it = 0; it < 60 && *ctx.evaluations - start < budget; ++it) {
      if (gsl_min_fminimizer_iterate(s) != GSL_SUCCESS) break;
      const double l = gsl_min_fminimizer_x_lower(s), u = gsl_min_fminimizer_x_upper(s);
      if (gsl_min_test_interval(l, u, 1e-7, 1e-6) == GSL_SUCCESS) break;
    }
  }
  gsl_set_error_handler(old);
  gsl_min_fminimizer_free(s);
}

}  // namespace

MinimizeResult powell_minimize(const Objective& f, std::vector<double> x0, int max_evaluations,
                               double rel_tol, double initial_step) {
  const std::size_t n = x0.size();
  MinimizeResult r;
  r.x = x0;
  r.f = f(x0);
  r.evaluations = 1;
  if (n == 0) {
    r.converged = true;
    return r;
  }
  std::vector<std::vector<double>> dirs(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) dirs[i][i] = 1.0;

  while (r.evaluations < max_evaluations) {
    const double f_start = r.f;
    const std::vector<double> x_start = r.x;
    double biggest_drop = 0.0;
    std::size_t biggest_index = 0;
    for (std::size_t i = 0; i < n && r.evaluations < max_evaluations; ++i) {
      LineContext ctx{&f, &r.x, &dirs[i], std::vector<double>(n), &r.evaluations, r.f, r.x};
      const double before = r.f;
      line_minimize(ctx, r.f, initial_step, max_evaluations - r.evaluations);
      r.x = ctx.best_x;
      r.f = ctx.best_f;
      if (before - r.f > biggest_drop) {
        biggest_drop = before - r.f;
        biggest_index = i;
      }
    }
    const double drop = f_start - r.f;
    if (drop <= rel_tol * (std::abs(f_start) + 1e-12)) {
      r.converged = true;
      break;
    }
    // Replace the direction of largest decrease by the net displacement.
    std::vector<double> net(n);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      net[i] = r.x[i] - x_start[i];
      norm += net[i] * net[i];
    }
    norm = std::sqrt(norm);
    if (norm > 0.0 && r.evaluations < max_evaluations) {
      for (double& v : net) v /= norm;
      LineContext ctx{&f, &r.x, &net, std::vector<double>(n), &r.evaluations, r.f, r.x};
      line_minimize(ctx, r.f, initial_step, max_evaluations - r.evaluations);
      r.x = ctx.best_x;
      r.f = ctx.best_f;
      dirs[biggest_index] = dirs.back();
      dirs.back() = net;
    }
  }
  return r;
}

}  // namespace mtdlcu
