#include "hzmp/report.hpp"

#include "hzmp/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace hzmp {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmtShort(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

Vec project(const Vec& x, int ax0, int ax1) {
  return makeVec({x(ax0), x(ax1)});
}

void polygonElement(std::ostream& out, const std::vector<Vec>& pts, int ax0,
                    int ax1, const std::string& style) {
  out << "    <polygon points=\"";
  for (const Vec& p : pts) {
    out << fmtShort(p(ax0)) << "," << fmtShort(p(ax1)) << " ";
  }
  out << "\" " << style << "/>\n";
}

}  // namespace

void writeTraceCsv(const PlanResult& result, std::ostream& out) {
  out << "iteration,path_id,cost,best_cost,inactive_leaves\n";
  for (const IterationRow& row : result.trace) {
    out << row.iteration << "," << row.pathId << "," << fmt(row.cost) << ","
        << fmt(row.bestCost) << "," << row.inactiveLeaves << "\n";
  }
}

void emitSvg(const RunRecord& record, const std::filesystem::path& outPath,
             std::optional<std::pair<int, int>> projection) {
  const Scenario& scenario = record.scenario;
  int ax0 = 0, ax1 = 1;
  if (scenario.dimension != 2) {
    if (!projection) {
      throw NotPlottable("emitSvg: non-2D scenario needs a projection axis pair");
    }
    ax0 = projection->first;
    ax1 = projection->second;
    if (ax0 < 0 || ax1 < 0 || ax0 >= scenario.dimension ||
        ax1 >= scenario.dimension || ax0 == ax1) {
      throw NotPlottable("emitSvg: invalid projection axes");
    }
  }

  const Box& ws = scenario.workspace;
  const double w = ws.upper(ax0) - ws.lower(ax0);
  const double h = ws.upper(ax1) - ws.lower(ax1);
  const double margin = 0.05 * std::max(w, h);
  const double stroke = 0.004 * std::max(w, h);

  std::ofstream out(outPath);
  if (!out) {
    throw Error("emitSvg: cannot write " + outPath.string());
  }

  const double viewW = w + 2 * margin;
  const double viewH = h + 2 * margin;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\""
      << fmtShort(800.0 * viewH / viewW) << "\" viewBox=\"0 0 "
      << fmtShort(viewW) << " " << fmtShort(viewH) << "\">\n";
  out << "  <title>" << scenario.name << "</title>\n";
  // Flip the y axis so workspace coordinates can be used directly inside.
  out << "  <g transform=\"translate(" << fmtShort(margin - ws.lower(ax0))
      << "," << fmtShort(viewH - margin + ws.lower(ax1))
      << ") scale(1,-1)\" stroke-width=\"" << fmtShort(stroke) << "\">\n";

  out << "   <g id=\"workspace\">\n";
  out << "    <rect x=\"" << fmtShort(ws.lower(ax0)) << "\" y=\""
      << fmtShort(ws.lower(ax1)) << "\" width=\"" << fmtShort(w)
      << "\" height=\"" << fmtShort(h)
      << "\" fill=\"#f8f8f8\" stroke=\"#404040\"/>\n";
  out << "   </g>\n";

  out << "   <g id=\"obstacles\">\n";
  for (const auto& obs : scenario.obstacles) {
    polygonElement(out, obs.vertices, ax0, ax1,
                   "fill=\"#303030\" stroke=\"none\"");
  }
  out << "   </g>\n";

  out << "   <g id=\"leaves\">\n";
  for (const auto& region : record.result.regions) {
    polygonElement(out, region.vertices, ax0, ax1,
                   "fill=\"none\" stroke=\"#6699cc\"");
  }
  out << "   </g>\n";

  out << "   <g id=\"faces\">\n";
  for (const auto& [key, face] : record.result.graph.faces) {
    const auto samples = sampleFace(face, 24, SamplerKind::hitAndRun(), 1234);
    double bestD = -1.0;
    Vec a = samples.front(), b = samples.front();
    for (size_t i = 0; i < samples.size(); ++i) {
      for (size_t j = i + 1; j < samples.size(); ++j) {
        const double d = (samples[i] - samples[j]).norm();
        if (d > bestD) {
          bestD = d;
          a = samples[i];
          b = samples[j];
        }
      }
    }
    if (bestD > 1e-9) {
      out << "    <line x1=\"" << fmtShort(a(ax0)) << "\" y1=\""
          << fmtShort(a(ax1)) << "\" x2=\"" << fmtShort(b(ax0)) << "\" y2=\""
          << fmtShort(b(ax1)) << "\" stroke=\"#33aa33\"/>\n";
    } else {
      out << "    <circle cx=\"" << fmtShort(a(ax0)) << "\" cy=\""
          << fmtShort(a(ax1)) << "\" r=\"" << fmtShort(stroke * 2)
          << "\" fill=\"#33aa33\"/>\n";
    }
  }
  out << "   </g>\n";

  out << "   <g id=\"informed\">\n";
  if (record.result.informed) {
    const InformedSet& e = *record.result.informed;
    const double deg =
        std::atan2(e.dhat(ax1), e.dhat(ax0)) * 180.0 / 3.14159265358979323846;
    out << "    <ellipse cx=\"" << fmt(e.center(ax0)) << "\" cy=\""
        << fmt(e.center(ax1)) << "\" rx=\"" << fmt(e.a) << "\" ry=\""
        << fmt(e.bAxis) << "\" transform=\"rotate(" << fmtShort(deg) << " "
        << fmt(e.center(ax0)) << " " << fmt(e.center(ax1))
        << ")\" fill=\"none\" stroke=\"#cc3333\" stroke-dasharray=\""
        << fmtShort(stroke * 4) << "\"/>\n";
  }
  out << "   </g>\n";

  out << "   <g id=\"path\">\n";
  if (record.result.status == PlanStatus::Solved) {
    std::vector<Vec> pts = {scenario.start};
    for (const Vec& s : record.result.bestPath.waypoints) pts.push_back(s);
    pts.push_back(scenario.goal);
    out << "    <polyline points=\"";
    for (const Vec& p : pts) {
      out << fmtShort(p(ax0)) << "," << fmtShort(p(ax1)) << " ";
    }
    out << "\" fill=\"none\" stroke=\"#aa5500\" stroke-width=\""
        << fmtShort(stroke * 2) << "\"/>\n";
  }
  out << "    <circle cx=\"" << fmtShort(scenario.start(ax0)) << "\" cy=\""
      << fmtShort(scenario.start(ax1)) << "\" r=\"" << fmtShort(stroke * 3)
      << "\" fill=\"#22aa22\"/>\n";
  out << "    <circle cx=\"" << fmtShort(scenario.goal(ax0)) << "\" cy=\""
      << fmtShort(scenario.goal(ax1)) << "\" r=\"" << fmtShort(stroke * 3)
      << "\" fill=\"#cc2222\"/>\n";
  out << "   </g>\n";

  out << "  </g>\n";
  out << "</svg>\n";
}

}  // namespace hzmp
