#include "outputs.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "assembly.hpp"

namespace wrgoal {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string px(double v) { return fmt("%.2f", v); }

struct Series {
  std::vector<double> x, y;
  std::string color;
  std::string label;
  bool dashed = false;
  bool markers = true;
};

// Minimal deterministic SVG line plot; enough for the three figure kinds.
struct Plot {
  double W = 720, H = 480, ml = 80, mr = 24, mt = 24, mb = 56;
  bool logx = false, logy = false;
  std::string xlabel, ylabel;
  std::vector<Series> series;

  std::string render() const {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    auto usable = [&](double v, bool lg) { return std::isfinite(v) && (!lg || v > 0.0); };
    for (const auto& s : series)
      for (size_t k = 0; k < s.x.size(); ++k) {
        if (!usable(s.x[k], logx) || !usable(s.y[k], logy)) continue;
        const double tx = logx ? std::log10(s.x[k]) : s.x[k];
        const double ty = logy ? std::log10(s.y[k]) : s.y[k];
        if (!any) {
          xmin = xmax = tx;
          ymin = ymax = ty;
          any = true;
        } else {
          xmin = std::min(xmin, tx);
          xmax = std::max(xmax, tx);
          ymin = std::min(ymin, ty);
          ymax = std::max(ymax, ty);
        }
      }
    auto widen = [](double& lo, double& hi, bool lg) {
      if (hi - lo < 1e-12) {
        lo -= lg ? 0.5 : (std::abs(lo) * 0.1 + 0.5);
        hi += lg ? 0.5 : (std::abs(hi) * 0.1 + 0.5);
      } else {
        const double pad = (hi - lo) * 0.06;
        lo -= pad;
        hi += pad;
      }
    };
    widen(xmin, xmax, logx);
    widen(ymin, ymax, logy);

    const double pw = W - ml - mr, ph = H - mt - mb;
    auto mapx = [&](double tx) { return ml + (tx - xmin) / (xmax - xmin) * pw; };
    auto mapy = [&](double ty) { return H - mb - (ty - ymin) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";

    // ticks
    auto emit_tick_x = [&](double tx, const std::string& label) {
      const double x = mapx(tx);
      os << "<line x1=\"" << px(x) << "\" y1=\"" << px(mt) << "\" x2=\"" << px(x) << "\" y2=\""
         << px(H - mb) << "\" stroke=\"#dddddd\"/>\n";
      os << "<text x=\"" << px(x) << "\" y=\"" << px(H - mb + 18)
         << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << label
         << "</text>\n";
    };
    auto emit_tick_y = [&](double ty, const std::string& label) {
      const double y = mapy(ty);
      os << "<line x1=\"" << px(ml) << "\" y1=\"" << px(y) << "\" x2=\"" << px(W - mr)
         << "\" y2=\"" << px(y) << "\" stroke=\"#dddddd\"/>\n";
      os << "<text x=\"" << px(ml - 6) << "\" y=\"" << px(y + 4)
         << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" << label
         << "</text>\n";
    };
    auto decade_ticks = [&](double lo, double hi, auto emit) {
      const int d0 = static_cast<int>(std::ceil(lo - 1e-9));
      const int d1 = static_cast<int>(std::floor(hi + 1e-9));
      const int step = std::max(1, (d1 - d0) / 8 + ((d1 - d0) % 8 ? 1 : 0));
      for (int d = d0; d <= d1; d += step) {
        char lab[24];
        std::snprintf(lab, sizeof lab, "1e%d", d);
        emit(static_cast<double>(d), std::string(lab));
      }
    };
    auto linear_ticks = [&](double lo, double hi, auto emit) {
      const double raw = (hi - lo) / 5.0;
      const double mag = std::pow(10.0, std::floor(std::log10(raw)));
      double step = mag;
      if (raw / mag > 5.0)
        step = 10 * mag;
      else if (raw / mag > 2.0)
        step = 5 * mag;
      else if (raw / mag > 1.0)
        step = 2 * mag;
      for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step)
        emit(v, fmt("%g", std::abs(v) < step * 1e-9 ? 0.0 : v));
    };
    if (logx)
      decade_ticks(xmin, xmax, emit_tick_x);
    else
      linear_ticks(xmin, xmax, emit_tick_x);
    if (logy)
      decade_ticks(ymin, ymax, emit_tick_y);
    else
      linear_ticks(ymin, ymax, emit_tick_y);

    os << "<rect x=\"" << px(ml) << "\" y=\"" << px(mt) << "\" width=\"" << px(pw)
       << "\" height=\"" << px(ph) << "\" fill=\"none\" stroke=\"#333333\"/>\n";

    for (const auto& s : series) {
      std::vector<std::pair<double, double>> run;
      auto flush_run = [&]() {
        if (run.size() > 1) {
          os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.8\"";
          if (s.dashed) os << " stroke-dasharray=\"6 4\"";
          os << " points=\"";
          for (const auto& [x, y] : run) os << px(x) << "," << px(y) << " ";
          os << "\"/>\n";
        }
        run.clear();
      };
      for (size_t k = 0; k < s.x.size(); ++k) {
        if (!usable(s.x[k], logx) || !usable(s.y[k], logy)) {
          flush_run();
          continue;
        }
        const double x = mapx(logx ? std::log10(s.x[k]) : s.x[k]);
        const double y = mapy(logy ? std::log10(s.y[k]) : s.y[k]);
        run.emplace_back(x, y);
        if (s.markers)
          os << "<circle cx=\"" << px(x) << "\" cy=\"" << px(y) << "\" r=\"3\" fill=\"" << s.color
             << "\"/>\n";
      }
      flush_run();
    }

    // legend, top right
    double ly = mt + 16;
    size_t maxlab = 0;
    for (const auto& s : series) maxlab = std::max(maxlab, s.label.size());
    const double lw = 46 + 7.2 * static_cast<double>(maxlab);
    for (const auto& s : series) {
      if (s.label.empty()) continue;
      const double lx = W - mr - lw;
      os << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly - 4) << "\" x2=\"" << px(lx + 26)
         << "\" y2=\"" << px(ly - 4) << "\" stroke=\"" << s.color << "\" stroke-width=\"1.8\"";
      if (s.dashed) os << " stroke-dasharray=\"6 4\"";
      os << "/>\n";
      os << "<text x=\"" << px(lx + 32) << "\" y=\"" << px(ly)
         << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
      ly += 16;
    }

    os << "<text x=\"" << px(ml + pw / 2) << "\" y=\"" << px(H - 12)
       << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" << xlabel
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << px(mt + ph / 2)
       << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
          "transform=\"rotate(-90 16 "
       << px(mt + ph / 2) << ")\">" << ylabel << "</text>\n";
    os << "</svg>\n";
    return os.str();
  }
};

const char* kPalette[6] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Error::io, "cannot open " + path.string() + " for writing");
  f << content;
  f.flush();
  if (!f) throw Error(Error::io, "write failed for " + path.string());
}

}  // namespace

std::string fmt17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt("%.17g", v);
}

void write_run_csv(std::ostream& os, const VariantResult& vr) {
  os << "level,N,K,nu,mu_total,J_discrete,J_error_vs_reference\n";
  for (size_t l = 0; l < vr.history.levels.size(); ++l) {
    const auto& rec = vr.history.levels[l];
    os << rec.level << ',' << rec.N << ',' << rec.K << ',' << fmt17(rec.nu) << ','
       << fmt17(rec.mu_total) << ',' << fmt17(rec.J) << ',' << fmt17(vr.errors[l]) << '\n';
  }
}

void write_estimator_csv(std::ostream& os, const LevelRecord& rec) {
  os << "level,K,nu,mu_total\n";
  os << rec.level << ',' << rec.K << ',' << fmt17(rec.nu) << ',' << fmt17(rec.mu_total) << '\n';
  os << "i,j,cell_left,cell_right,mu_local\n";
  for (size_t i = 0; i < rec.mesh_grids.size(); ++i) {
    const auto& g = rec.mesh_grids[i];
    for (size_t j = 1; j < g.size(); ++j)
      os << (i + 1) << ',' << j << ',' << fmt17(g[j - 1]) << ',' << fmt17(g[j]) << ','
         << fmt17(rec.mu_local[i][static_cast<int>(j) - 1]) << '\n';
  }
}

void write_mesh_txt(std::ostream& os, const LevelRecord& rec) {
  for (const auto& g : rec.mesh_grids) {
    for (size_t j = 0; j < g.size(); ++j) os << (j ? " " : "") << fmt17(g[j]);
    os << '\n';
  }
}

void write_outputs(const ExperimentResult& res, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Error::io, "cannot create output directory " + dir);
  const fs::path base(dir);

  Plot conv;
  conv.logx = conv.logy = true;
  conv.xlabel = "N (total cells over all components)";
  conv.ylabel = "|J error| and estimate";
  Plot iters;
  iters.xlabel = "refinement level";
  iters.ylabel = "iterations K";

  for (size_t vi = 0; vi < res.variants.size(); ++vi) {
    const auto& vr = res.variants[vi];
    const std::string tok = file_token(vr.variant);
    const std::string color = kPalette[vi % 6];

    std::ostringstream runcsv;
    write_run_csv(runcsv, vr);
    write_file(base / ("run_" + tok + ".csv"), runcsv.str());

    const LevelRecord& fin = vr.history.levels.back();
    std::ostringstream estcsv;
    write_estimator_csv(estcsv, fin);
    write_file(base / ("estimator_" + tok + ".csv"), estcsv.str());

    std::ostringstream mesht;
    write_mesh_txt(mesht, fin);
    write_file(base / ("mesh_" + tok + ".txt"), mesht.str());

    // step-size pattern of the final mesh
    Plot mp;
    mp.logy = true;
    mp.xlabel = "t";
    mp.ylabel = "step size";
    for (size_t i = 0; i < fin.mesh_grids.size(); ++i) {
      const auto& g = fin.mesh_grids[i];
      Series s;
      s.color = kPalette[i % 6];
      s.label = "component " + std::to_string(i + 1);
      s.markers = false;
      for (size_t j = 1; j < g.size(); ++j) {
        const double dt = g[j] - g[j - 1];
        s.x.push_back(g[j - 1]);
        s.y.push_back(dt);
        s.x.push_back(g[j]);
        s.y.push_back(dt);
      }
      mp.series.push_back(std::move(s));
    }
    write_file(base / ("mesh_" + tok + ".svg"), mp.render());

    Series err, est;
    err.color = est.color = color;
    err.label = to_string(vr.variant) + " error";
    est.label = to_string(vr.variant) + " estimate";
    est.dashed = true;
    for (size_t l = 0; l < vr.history.levels.size(); ++l) {
      const auto& rec = vr.history.levels[l];
      err.x.push_back(static_cast<double>(rec.N));
      err.y.push_back(vr.errors[l]);
      est.x.push_back(static_cast<double>(rec.N));
      est.y.push_back(rec.mu_total + (std::isfinite(rec.nu) ? rec.nu : 0.0));
    }
    conv.series.push_back(std::move(err));
    conv.series.push_back(std::move(est));

    Series ks;
    ks.color = color;
    ks.label = to_string(vr.variant);
    for (const auto& rec : vr.history.levels) {
      ks.x.push_back(static_cast<double>(rec.level));
      ks.y.push_back(static_cast<double>(rec.K));
    }
    iters.series.push_back(std::move(ks));

    if (res.config.emit_matrices) {
      const Qoi q = Qoi::make(res.config.qoi_terms, res.config.problem);
      const Splitting s = build_splitting(res.config.problem.B, res.config.splitting);
      for (const auto& rec : vr.history.levels) {
        const MultiMesh mesh(rec.mesh_grids, rec.level);
        const AssembledSystem sys =
            assemble(res.config.problem, s, q, mesh, vr.variant.scheme);
        char lvl[16];
        std::snprintf(lvl, sizeof lvl, "l%02d", rec.level);
        const std::string stem = "matrices_" + tok + "_" + lvl + "_";
        std::ostringstream fh, fc, gg, hh;
        write_triplets(sys.F_hat, fh);
        write_triplets(sys.F_check, fc);
        for (int r = 0; r < sys.G.size(); ++r) gg << fmt17(sys.G[r]) << '\n';
        for (int r = 0; r < sys.H.size(); ++r) hh << fmt17(sys.H[r]) << '\n';
        write_file(base / (stem + "fhat.txt"), fh.str());
        write_file(base / (stem + "fcheck.txt"), fc.str());
        write_file(base / (stem + "g.txt"), gg.str());
        write_file(base / (stem + "h.txt"), hh.str());
      }
    }
  }

  write_file(base / "convergence.svg", conv.render());
  write_file(base / "iterations.svg", iters.render());
}

}  // namespace wrgoal
