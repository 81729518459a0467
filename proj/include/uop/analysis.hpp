#ifndef UOP_ANALYSIS_HPP
#define UOP_ANALYSIS_HPP

#include "uop/config.hpp"
#include "uop/corpus_io.hpp"
#include "uop/extract.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace uop {

enum class PolarityClass { positive, negative, neutral };

// Counts of (document, label) incidences per category, month and
// neighborhood. Indexing is [category][month][neighborhood].
struct CountTensor {
    std::vector<std::string> categories;
    std::vector<YearMonth> months;
    std::vector<std::string> neighborhoods;
    std::vector<int64_t> counts;

    int64_t& at(size_t i, size_t j, size_t n) {
        return counts[(i * months.size() + j) * neighborhoods.size() + n];
    }
    int64_t at(size_t i, size_t j, size_t n) const {
        return counts[(i * months.size() + j) * neighborhoods.size() + n];
    }
};

// Point-in-polygon by the even-odd rule; documents outside every
// neighborhood are ignored; multi-label documents count once per label.
CountTensor count_points(const std::vector<PerceptionCluster>& clusters,
                         const std::vector<NamedRing>& neighborhoods,
                         const std::vector<std::string>& categories);

struct ZScoreEntry {
    std::string category;
    YearMonth month;
    std::string neighborhood;
    int64_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double z = 0.0;
};

struct ZScoreReport {
    std::vector<ZScoreEntry> entries;
    StdDivisor divisor = StdDivisor::population;
};

// Standardizes each (category, month) count across neighborhoods; sigma = 0
// yields z = 0. Requires at least 2 neighborhoods.
ZScoreReport z_scores(const CountTensor& counts, StdDivisor divisor = StdDivisor::population);

// Fixed polarity grouping of the canonical perception categories and the
// external comparison labels. Unknown labels are an error.
PolarityClass polarity_class(const std::string& label);

const char* polarity_name(PolarityClass p);

struct PolarizedPoint {
    GeoPoint pos;
    PolarityClass polarity = PolarityClass::neutral;
};

struct DistanceEntry {
    std::string neighborhood;
    PolarityClass polarity = PolarityClass::neutral;
    bool absent = false; // no external or no counterpart points for this class
    double mean_m = 0.0;
    double ci_low_m = 0.0;
    double ci_high_m = 0.0;
    size_t n_points = 0;
    bool small_sample = false; // CI degenerate (single external point)
};

// For every external point inside a neighborhood, the minimum haversine
// distance to one of our same-polarity points; mean and normal 95% CI per
// (neighborhood, polarity). citywide widens the counterpart search from the
// neighborhood to all our points.
std::vector<DistanceEntry> nearest_distance_report(std::span<const PolarizedPoint> external,
                                                   std::span<const PolarizedPoint> ours,
                                                   const std::vector<NamedRing>& neighborhoods,
                                                   bool citywide = false);

// Stem frequencies in descending count order, ties lexicographic.
std::vector<std::pair<std::string, int64_t>> term_frequencies(
    const std::vector<Document>& docs);

void write_zscore_csv(const ZScoreReport& report, const std::string& path);
void write_distance_csv(const std::vector<DistanceEntry>& entries, const std::string& path);
void write_term_csv(const std::vector<std::pair<std::string, int64_t>>& terms,
                    const std::string& path);

} // namespace uop

#endif
