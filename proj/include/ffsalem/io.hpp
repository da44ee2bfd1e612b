#pragma once

#include <iosfwd>
#include <string>

#include "ffsalem/grid.hpp"
#include "ffsalem/kakeya.hpp"
#include "ffsalem/minimax.hpp"
#include "ffsalem/salem.hpp"

namespace ffsalem {

// Shortest text that parses back to exactly this double.
std::string fmt_double(double v);

// Point set file: header "q=<p>^<n> d=<d>", then one point per line as d
// comma-separated element encodings. '#' lines and blank lines are skipped.
void write_point_set(std::ostream& os, const PointSet& s);
PointSet read_point_set(std::istream& is);

// Family file: header "q=<p>^<n> d=<d> k=<k>", then per plane k rows of d
// comma-separated digits plus an optional "u=<d digits>" shift row, planes
// separated by blank lines. A file without shift rows is a plain direction
// family (all shifts zero).
void write_family(std::ostream& os, const AffinePlaneFamily& fam);
AffinePlaneFamily read_family(std::istream& is);

// Grid CSV: "# q=<p>^<n> d=<d>", "index,re,im", one row per cell.
void write_grid(std::ostream& os, const GridFunction& g);
GridFunction read_grid(std::istream& is);

// Measure CSV: "# q=<p>^<n> d=<d>", "index,weight"; weights are exact "a/b"
// when the measure carries integer counts, decimal otherwise. Zero-weight
// cells are omitted.
void write_measure(std::ostream& os, const Measure& mu);
Measure read_measure(std::istream& is);

std::string bound_report_json(const BoundReport& r);
std::string minimax_report_json(const MinimaxResult& r, const FieldCtx& F, std::uint32_t d);
std::string sharpness_report_json(const SharpnessReport& r);

// File helpers; throw IoError with the path on failure.
void save_text(const std::string& path, const std::string& text);
std::string load_text(const std::string& path);

void save_point_set(const std::string& path, const PointSet& s);
PointSet load_point_set(const std::string& path);
void save_family(const std::string& path, const AffinePlaneFamily& fam);
AffinePlaneFamily load_family(const std::string& path);
void save_grid(const std::string& path, const GridFunction& g);
GridFunction load_grid(const std::string& path);
void save_measure(const std::string& path, const Measure& mu);
Measure load_measure(const std::string& path);

} // namespace ffsalem
