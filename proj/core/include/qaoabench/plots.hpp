#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qaoabench/analysis.hpp"

namespace qaoabench {

enum class PlotFormat { svg, csv, both };

// Everything cmd_analyze derives from a journal, gathered for emission.
struct AnalysisOutputs {
    std::vector<RatioSummary> by_depth;
    std::vector<RatioSummary> by_class;
    std::vector<DistancePair> pairs;
    std::optional<LinearFit> ged_fit;
    std::vector<ConcentrationCloud> clouds;
};

// Writes deterministic SVG plots and companion CSVs (same data) into
// out_dir and returns the paths written. Identical inputs produce
// byte-identical files. Files:
//   boxplot_p.{svg,csv}          ratio five-number summary by depth
//   boxplot_ep.{svg,csv}         ratio five-number summary by e_p class
//   scatter_ged.{svg,csv}        |ratio difference| vs edit distance, with trend line
//   concentration_p<d>.{svg,csv} near-optimal (beta, gamma) cloud per depth
// CSV schemas: (group,min,q1,median,q3,max); (g1,g2,ged,d);
// (graph_id,step,beta,gamma).
std::vector<std::string> emit_plots(const AnalysisOutputs& outputs, const std::string& out_dir,
                                    PlotFormat format = PlotFormat::both);

// Locale-independent shortest round-trip formatting used by every emitter.
std::string format_double(double value);

}  // namespace qaoabench
