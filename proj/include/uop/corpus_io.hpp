#ifndef UOP_CORPUS_IO_HPP
#define UOP_CORPUS_IO_HPP

#include "uop/geo.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace uop {

struct RawRecord {
    std::string id;
    std::string text; // lowercased at load
    int64_t timestamp = 0;
    std::optional<GeoPoint> geo;
};

struct LexiconBundle {
    std::unordered_set<std::string> stopwords;
    std::unordered_map<std::string, std::string> contractions;
    std::unordered_map<std::string, double> sentiment;
    std::unordered_set<std::string> adjectives;
};

struct RejectedLine {
    size_t line_no = 0;
    std::string reason;
};

struct CorpusLoad {
    std::vector<RawRecord> records;
    std::vector<RejectedLine> rejects;
};

// One JSON record per line with fields id, text, timestamp (integer seconds
// or ISO-8601 string) and optional lat/lon. Invalid lines are reported in
// `rejects`, not returned. Throws Error if the file cannot be read.
CorpusLoad load_corpus(const std::string& path, bool require_geo);

// Inverse of load_corpus for valid records; one JSON object per line.
void write_corpus(const std::vector<RawRecord>& records, const std::string& path);

// Expects stopwords.txt, contractions.tsv, sentiment.tsv, adjectives.txt in
// `dir`. Entries are lowercased; sentiment scores outside [-1,1] are errors.
LexiconBundle load_lexicons(const std::string& dir);

// Point features for GeoJSON output: one per (document, cluster) membership.
struct GeoFeature {
    std::string doc_id;
    GeoPoint pos;
    int cluster_id = 0;
    std::vector<std::string> labels; // sorted lexically on write
    std::string month;               // "YYYY-MM"
};

void write_geojson(const std::vector<GeoFeature>& features, const std::string& path);
std::vector<GeoFeature> load_geojson(const std::string& path);

struct NamedRing {
    std::string name;
    std::vector<GeoPoint> ring; // open ring, >= 3 distinct vertices
};

// GeoJSON FeatureCollection of Polygons with a "name" property.
// Validates ring closure, vertex count and self-intersection.
std::vector<NamedRing> load_neighborhoods(const std::string& path);

struct LabeledPoint {
    std::string label;
    GeoPoint pos;
};

// CSV lines "label,lat,lon"; a header line is skipped if present.
std::vector<LabeledPoint> load_external_points(const std::string& path);

} // namespace uop

#endif
