// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Each criterion also carries a runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "flowseek/config.hpp"
#include "flowseek/scenarios.hpp"
#include "flowseek/svg_render.hpp"
#include "flowseek/trial.hpp"
#include "flowseek/trial_log.hpp"
#include "flowseek/vector_surge.hpp"

using namespace flowseek;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(const char* name, bool pass, double elapsed_s, double budget_s,
            const std::string& detail) {
  const bool in_budget = elapsed_s < budget_s;
  const bool ok = pass && in_budget;
  if (!ok) ++g_failures;
  std::printf("[%s] %-28s %s (%.2f s / budget %.0f s)\n", ok ? "PASS" : "FAIL", name,
              detail.c_str(), elapsed_s, budget_s);
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

// --- criterion 1: bearing formula vs an independent quadrant oracle -------

double bearing_oracle(double x, double y) {
  double a;
  if (x > 0.0) {
    a = std::atan(y / x) * kDegPerRad;
  } else if (x < 0.0 && y >= 0.0) {
    a = std::atan(y / x) * kDegPerRad + 180.0;
  } else if (x < 0.0) {
    a = std::atan(y / x) * kDegPerRad - 180.0;
  } else {
    a = y > 0.0 ? 90.0 : -90.0;
  }
  double th = a + 180.0;
  while (th >= 360.0) th -= 360.0;
  while (th < 0.0) th += 360.0;
  return th;
}

void criterion1() {
  Timer t;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  double max_delta = 0.0;
  int n = 0;
  while (n < 10000) {
    const Vec2 v{u(rng), u(rng)};
    if (v.x == 0.0 && v.y == 0.0) continue;
    ++n;
    double d = std::abs(flow_angle(v) - bearing_oracle(v.x, v.y));
    if (d > 180.0) d = 360.0 - d;
    max_delta = std::max(max_delta, d);
  }
  report("C1 bearing-oracle", max_delta < 1e-9, t.seconds(), 1.0,
         "max|delta|=" + fmt("%.3g", max_delta) + " deg over 10^4 deflections");
}

// --- criterion 2: characterization RMS ------------------------------------

void criterion2() {
  Timer t;
  ScenarioConfig noisy;  // defaults: sigma = 0.5
  ScenarioConfig quiet;
  quiet.sensor.noise_sigma_mT = 0.0;

  double worst_noisy = 0.0, worst_quiet = 0.0;
  bool pass = true;
  for (const auto& pos : run_characterize(noisy)) {
    worst_noisy = std::max(worst_noisy, pos.rms_deg);
    if (!(pos.rms_deg <= 15.0)) pass = false;
  }
  for (const auto& pos : run_characterize(quiet)) {
    worst_quiet = std::max(worst_quiet, pos.rms_deg);
    if (!(pos.rms_deg <= 1.0)) pass = false;
  }
  report("C2 characterization", pass, t.seconds(), 10.0,
         "worst RMS: noise=" + fmt("%.2f", worst_noisy) + " deg (<=15), noiseless=" +
             fmt("%.4f", worst_quiet) + " deg (<=1)");
}

// --- criterion 3: reorientation grid across noise and plume width ---------

void criterion3() {
  Timer t;
  bool pass = true;
  std::string detail;
  double worst_all = 0.0;
  int worst_fast = 12;
  for (double sigma : {0.25, 0.5, 1.0}) {
    for (double width : {10.0, 15.0, 25.0}) {
      ScenarioConfig cfg;
      cfg.sensor.noise_sigma_mT = sigma;
      cfg.fan.half_width_deg = width;
      const auto cells = run_reorient(cfg);
      int fast = 0;
      double slowest = 0.0;
      for (const auto& c : cells) {
        if (c.settled && c.settle_time_s <= 10.0) ++fast;
        if (!c.settled) {
          slowest = std::numeric_limits<double>::infinity();
        } else {
          slowest = std::max(slowest, c.settle_time_s);
        }
      }
      worst_fast = std::min(worst_fast, fast);
      worst_all = std::max(worst_all, slowest);
      if (fast < 11 || !(slowest <= 20.0)) pass = false;
    }
  }
  detail = "min cells settled<=10s: " + std::to_string(worst_fast) +
           "/12 (>=11), slowest settle " + fmt("%.1f", worst_all) + " s (<=20)";
  report("C3 reorientation", pass, t.seconds(), 30.0, detail);
}

// --- criterion 4: casting threshold consistency ----------------------------

void criterion4() {
  Timer t;
  ScenarioConfig cfg;
  cfg.sensor.noise_sigma_mT = 0.0;
  cfg.fan.heading_deg = 180.0;  // plume out of the arena: still air at the vehicle
  cfg.time_limit_s = 30.0;
  QuadState start;
  start.pos = {5.0, 5.0};
  const TrialResult r = run_trial(cfg, start, 17);
  double m_cast = 0.0;
  for (const Tick& k : r.log.ticks) {
    if (k.phase == "Cast") m_cast = std::max(m_cast, k.mag);
  }
  const double rel = std::abs(4.6 - 1.2 * m_cast) / 4.6;
  report("C4 threshold-consistency", rel < 0.05, t.seconds(), 10.0,
         "m_cast=" + fmt("%.4f", m_cast) + " mT, |4.6-1.2*m_cast|/4.6=" + fmt("%.4f", rel) +
             " (<0.05)");
}

// --- criterion 5: source-seeking batch -------------------------------------

void criterion5() {
  Timer t;
  ScenarioConfig cfg;  // defaults: 50 trials, seed 42, noise 0.5
  const BatchResult r = run_batch(cfg);
  const bool rate_ok = r.success_rate >= 0.80;
  const bool median_ok =
      !std::isnan(r.median_success_time_s) && r.median_success_time_s >= 20.0 &&
      r.median_success_time_s <= 90.0;
  report("C5 seek-batch", rate_ok && median_ok, t.seconds(), 120.0,
         "success " + std::to_string(r.successes) + "/" + std::to_string(cfg.trials) +
             " (>=80%), median success time " + fmt("%.1f", r.median_success_time_s) +
             " s (in [20,90])");
}

// --- criterion 6: exhaustive FSM transition table ---------------------------

void criterion6() {
  Timer t;
  const SensorParams sensor;
  const VehicleParams vehicle;
  const SurgeParams p;
  const double stop = p.stop_threshold(sensor);
  const std::vector<double> bands = {0.5 * p.loss_threshold(),
                                     0.5 * (p.loss_threshold() + p.detect_threshold_mT),
                                     0.5 * (p.detect_threshold_mT + stop), stop * 1.01};
  bool pass = true;
  auto check = [&](Phase from, double mag, bool flag, double loss_pre, double calib_pre,
                   Phase want) {
    FsmState s;
    s.phase = from;
    s.loss_elapsed = loss_pre;
    s.calib_elapsed = calib_pre;
    FlowEstimate e;
    e.magnitude = mag;
    e.detected = mag >= p.detect_threshold_mT;
    const auto [n, cmd] = transition(s, e, flag, 0.0, 0.025, p, sensor, vehicle);
    (void)cmd;
    if (n.phase != want) pass = false;
  };

  for (double mag : bands) {
    for (bool flag : {false, true}) {
      check(Phase::Calibrate, mag, flag, 0.0, 0.0, Phase::Calibrate);
      check(Phase::Calibrate, mag, flag, 0.0, p.calibration_s, Phase::Cast);
      check(Phase::Cast, mag, flag, 0.0, 0.0,
            mag >= p.detect_threshold_mT ? Phase::Reorient : Phase::Cast);
      check(Phase::Reorient, mag, flag, 0.0, 0.0, flag ? Phase::Surge : Phase::Reorient);
      Phase surge_want = Phase::Surge;
      if (mag >= stop) surge_want = Phase::Stopped;
      else if (mag < p.loss_threshold()) surge_want = Phase::Cast;
      check(Phase::Surge, mag, flag, p.loss_hold_s, 0.0, surge_want);
      // Without the hold satisfied, loss must not fire yet.
      if (mag < p.loss_threshold()) check(Phase::Surge, mag, flag, 0.0, 0.0, Phase::Surge);
      check(Phase::Stopped, mag, flag, 0.0, 0.0, Phase::Stopped);
      check(Phase::Stopped, mag, flag, p.loss_hold_s, p.calibration_s, Phase::Stopped);
    }
  }
  report("C6 fsm-table", pass, t.seconds(), 5.0,
         "4 bands x 2 flags x 5 phases, Stopped absorbing, loss debounced");
}

// --- criterion 7: byte-identical outputs across runs ------------------------

void criterion7() {
  Timer t;
  ScenarioConfig cfg;
  cfg.trials = 3;
  cfg.time_limit_s = 60.0;

  auto run_once = [&](std::string& csv, std::string& svg, std::string& summary) {
    const BatchResult r = run_batch(cfg, [&](int i, const TrialResult& trial) {
      if (i == 0) {
        csv = write_tick_csv(trial.log);
        svg = render_svg(trial.log, cfg);
      }
    });
    summary = write_batch_summary_csv(r);
  };
  std::string csv1, svg1, sum1, csv2, svg2, sum2;
  run_once(csv1, svg1, sum1);
  run_once(csv2, svg2, sum2);
  const bool pass = csv1 == csv2 && svg1 == svg2 && sum1 == sum2 && !csv1.empty();
  report("C7 determinism", pass, t.seconds(), 60.0,
         "tick CSV, SVG and batch summary byte-identical across two runs");
}

// --- criterion 8: filter properties -----------------------------------------

void criterion8() {
  Timer t;
  bool pass = true;
  std::string why;

  // Linearity.
  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    MovingAverage fa(10), fb(10), fc(10);
    for (int i = 0; i < 200; ++i) {
      const double s1 = u(rng), s2 = u(rng);
      const double lhs = fc.update(1.7 * s1 - 0.6 * s2);
      const double rhs = 1.7 * fa.update(s1) - 0.6 * fb.update(s2);
      if (std::abs(lhs - rhs) > 1e-12) pass = false;
    }
    if (!pass) why += " linearity";
  }
  // Unit steady-state gain.
  {
    MovingAverage f(10);
    double out = 0.0;
    for (int i = 0; i < 30; ++i) out = f.update(3.7);
    if (std::abs(out - 3.7) > 1e-12) {
      pass = false;
      why += " gain";
    }
  }
  // Partial-window mean.
  {
    MovingAverage f(10);
    const double a = f.update(2.0);
    const double b = f.update(4.0);
    if (std::abs(a - 2.0) > 1e-12 || std::abs(b - 3.0) > 1e-12) {
      pass = false;
      why += " partial-window";
    }
  }
  // Ramp group delay of (window-1)/2 samples.
  {
    MovingAverage f(10);
    for (int k = 0; k < 200; ++k) {
      const double out = f.update(0.37 * k);
      if (k >= 9 && std::abs(out - 0.37 * (k - 4.5)) > 1e-12) {
        pass = false;
        why += " group-delay";
        break;
      }
    }
  }
  report("C8 filter-properties", pass, t.seconds(), 5.0,
         pass ? "linearity, unit gain, partial-window mean, (w-1)/2 group delay all within 1e-12"
              : "failed:" + why);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
