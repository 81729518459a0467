#include "uop/corpus_io.hpp"

#include "uop/error.hpp"
#include "uop/util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

using nlohmann::json;

namespace uop {

namespace {

// Returns empty optional with `reason` set on any invariant violation.
std::optional<RawRecord> parse_record(const std::string& line, bool require_geo,
                                      std::string& reason) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        reason = "not a JSON object";
        return std::nullopt;
    }
    RawRecord rec;
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty()) {
        reason = "missing or empty id";
        return std::nullopt;
    }
    rec.id = j["id"].get<std::string>();
    if (!j.contains("text") || !j["text"].is_string()) {
        reason = "missing text";
        return std::nullopt;
    }
    rec.text = to_lower(j["text"].get<std::string>());
    if (!j.contains("timestamp")) {
        reason = "missing timestamp";
        return std::nullopt;
    }
    const json& ts = j["timestamp"];
    if (ts.is_number_integer()) {
        rec.timestamp = ts.get<int64_t>();
    } else if (ts.is_string()) {
        try {
            rec.timestamp = parse_iso8601_utc(ts.get<std::string>());
        } catch (const Error&) {
            reason = "bad timestamp string";
            return std::nullopt;
        }
    } else {
        reason = "timestamp is neither integer nor string";
        return std::nullopt;
    }
    if (rec.timestamp < 0) {
        reason = "negative timestamp";
        return std::nullopt;
    }
    bool has_lat = j.contains("lat");
    bool has_lon = j.contains("lon");
    if (has_lat != has_lon) {
        reason = "lat and lon must both be present or both absent";
        return std::nullopt;
    }
    if (has_lat) {
        if (!j["lat"].is_number() || !j["lon"].is_number()) {
            reason = "non-numeric coordinates";
            return std::nullopt;
        }
        double lat = j["lat"].get<double>();
        double lon = j["lon"].get<double>();
        if (!std::isfinite(lat) || !std::isfinite(lon) || lat < -90.0 || lat > 90.0 ||
            lon < -180.0 || lon > 180.0) {
            reason = "coordinates out of range";
            return std::nullopt;
        }
        rec.geo = GeoPoint{lat, lon};
    } else if (require_geo) {
        reason = "record has no coordinates";
        return std::nullopt;
    }
    return rec;
}

} // namespace

CorpusLoad load_corpus(const std::string& path, bool require_geo) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open corpus file: " + path);
    CorpusLoad out;
    std::unordered_set<std::string> seen;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        std::string reason;
        auto rec = parse_record(line, require_geo, reason);
        if (!rec) {
            out.rejects.push_back({line_no, reason});
            continue;
        }
        if (!seen.insert(rec->id).second) {
            out.rejects.push_back({line_no, "duplicate id: " + rec->id});
            continue;
        }
        out.records.push_back(std::move(*rec));
    }
    return out;
}

void write_corpus(const std::vector<RawRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write corpus file: " + path);
    for (const auto& rec : records) {
        json j;
        j["id"] = rec.id;
        j["text"] = rec.text;
        j["timestamp"] = rec.timestamp;
        if (rec.geo) {
            j["lat"] = rec.geo->lat;
            j["lon"] = rec.geo->lon;
        }
        out << j.dump() << '\n';
    }
}

namespace {

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open lexicon file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (!t.empty() && t[0] != '#')
            lines.emplace_back(t);
    }
    return lines;
}

} // namespace

LexiconBundle load_lexicons(const std::string& dir) {
    LexiconBundle lex;
    for (const auto& l : read_lines(dir + "/stopwords.txt"))
        lex.stopwords.insert(to_lower(l));
    for (const auto& l : read_lines(dir + "/adjectives.txt"))
        lex.adjectives.insert(to_lower(l));
    for (const auto& l : read_lines(dir + "/contractions.tsv")) {
        auto parts = split(l, '\t');
        if (parts.size() != 2 || parts[0].empty() || parts[1].empty())
            throw Error("malformed contractions line: " + l);
        lex.contractions[to_lower(parts[0])] = to_lower(parts[1]);
    }
    for (const auto& l : read_lines(dir + "/sentiment.tsv")) {
        auto parts = split(l, '\t');
        if (parts.size() != 2)
            throw Error("malformed sentiment line: " + l);
        double score;
        try {
            size_t used = 0;
            score = std::stod(parts[1], &used);
            if (used != parts[1].size())
                throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error("non-numeric sentiment score: " + l);
        }
        if (!std::isfinite(score) || score < -1.0 || score > 1.0)
            throw Error("sentiment score out of [-1,1]: " + l);
        lex.sentiment[to_lower(parts[0])] = score;
    }
    return lex;
}

void write_geojson(const std::vector<GeoFeature>& features, const std::string& path) {
    json fc;
    fc["type"] = "FeatureCollection";
    fc["features"] = json::array();
    for (const auto& f : features) {
        json feat;
        feat["type"] = "Feature";
        feat["geometry"]["type"] = "Point";
        feat["geometry"]["coordinates"] = {f.pos.lon, f.pos.lat};
        auto labels = f.labels;
        std::sort(labels.begin(), labels.end());
        feat["properties"]["cluster_id"] = f.cluster_id;
        feat["properties"]["labels"] = labels;
        feat["properties"]["month"] = f.month;
        feat["properties"]["doc_id"] = f.doc_id;
        fc["features"].push_back(std::move(feat));
    }
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write GeoJSON file: " + path);
    out << fc.dump(2) << '\n';
}

std::vector<GeoFeature> load_geojson(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open GeoJSON file: " + path);
    json fc = json::parse(in, nullptr, false);
    if (fc.is_discarded() || fc.value("type", "") != "FeatureCollection")
        throw Error("not a GeoJSON FeatureCollection: " + path);
    std::vector<GeoFeature> out;
    for (const auto& feat : fc["features"]) {
        GeoFeature f;
        const auto& coords = feat.at("geometry").at("coordinates");
        f.pos.lon = coords.at(0).get<double>();
        f.pos.lat = coords.at(1).get<double>();
        const auto& props = feat.at("properties");
        f.cluster_id = props.at("cluster_id").get<int>();
        f.labels = props.at("labels").get<std::vector<std::string>>();
        f.month = props.at("month").get<std::string>();
        f.doc_id = props.at("doc_id").get<std::string>();
        out.push_back(std::move(f));
    }
    return out;
}

namespace {

bool segments_intersect(const GeoPoint& a, const GeoPoint& b, const GeoPoint& c,
                        const GeoPoint& d) {
    auto orient = [](const GeoPoint& p, const GeoPoint& q, const GeoPoint& r) {
        double v = (q.lon - p.lon) * (r.lat - p.lat) - (q.lat - p.lat) * (r.lon - p.lon);
        return (v > 0) - (v < 0);
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4;
}

void validate_ring(const NamedRing& nr) {
    std::set<std::pair<double, double>> distinct;
    for (const auto& p : nr.ring)
        distinct.insert({p.lat, p.lon});
    if (distinct.size() < 3)
        throw Error("polygon '" + nr.name + "' has fewer than 3 distinct vertices");
    size_t n = nr.ring.size();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1)
                continue; // adjacent through the wrap
            if (segments_intersect(nr.ring[i], nr.ring[(i + 1) % n], nr.ring[j],
                                   nr.ring[(j + 1) % n]))
                throw Error("polygon '" + nr.name + "' is self-intersecting");
        }
    }
}

} // namespace

std::vector<NamedRing> load_neighborhoods(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open neighborhoods file: " + path);
    json fc = json::parse(in, nullptr, false);
    if (fc.is_discarded() || fc.value("type", "") != "FeatureCollection")
        throw Error("not a GeoJSON FeatureCollection: " + path);
    std::vector<NamedRing> out;
    for (const auto& feat : fc["features"]) {
        NamedRing nr;
        nr.name = feat.at("properties").at("name").get<std::string>();
        const auto& geom = feat.at("geometry");
        if (geom.at("type").get<std::string>() != "Polygon")
            throw Error("neighborhood '" + nr.name + "' is not a Polygon");
        const auto& ring = geom.at("coordinates").at(0); // outer ring, [lon, lat]
        for (const auto& v : ring)
            nr.ring.push_back(GeoPoint{v.at(1).get<double>(), v.at(0).get<double>()});
        if (nr.ring.size() < 4 || nr.ring.front() != nr.ring.back())
            throw Error("polygon '" + nr.name + "' ring is not closed");
        nr.ring.pop_back(); // store as open ring
        validate_ring(nr);
        out.push_back(std::move(nr));
    }
    return out;
}

std::vector<LabeledPoint> load_external_points(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open external points file: " + path);
    std::vector<LabeledPoint> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = std::string(trim(line));
        if (t.empty())
            continue;
        auto parts = split(t, ',');
        if (parts.size() != 3)
            throw Error("malformed external point at line " + std::to_string(line_no));
        if (line_no == 1 && parts[0] == "label")
            continue; // header
        try {
            double lat = std::stod(parts[1]);
            double lon = std::stod(parts[2]);
            if (lat < -90 || lat > 90 || lon < -180 || lon > 180)
                throw std::out_of_range("coords");
            out.push_back({to_lower(trim(parts[0])), GeoPoint{lat, lon}});
        } catch (const std::exception&) {
            throw Error("malformed external point at line " + std::to_string(line_no));
        }
    }
    return out;
}

} // namespace uop
