#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "uop/error.hpp"
#include "uop/extract.hpp"
#include "uop/geo.hpp"
#include "uop/hdbscan.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

using namespace uop;

namespace {

Document geo_doc(const std::string& id, double lat, double lon, int64_t ts = 0,
                 std::vector<std::string> stems = {}) {
    Document d;
    d.id = id;
    d.timestamp = ts;
    d.geo = GeoPoint{lat, lon};
    if (!stems.empty()) {
        Sentence s;
        s.stems = stems;
        s.surfaces = stems;
        d.sentences.push_back(std::move(s));
    }
    return d;
}

UopDictionary two_label_dict() {
    UopDictionary dict;
    Community pos;
    pos.label = "GREAT";
    pos.members = {"amazing", "great"};
    pos.polarity = Polarity::positive;
    pos.stems = {"amaz", "great"};
    Community neg;
    neg.label = "CREEPY";
    neg.members = {"creepy", "scary"};
    neg.polarity = Polarity::negative;
    neg.stems = {"creepi", "scari"};
    dict.communities = {pos, neg};
    dict.rebuild_stem_index();
    return dict;
}

EmbeddingModel axis_model() {
    // GREAT words on the x axis, CREEPY words on the y axis
    EmbeddingModel m;
    m.words = {"amazing", "great", "creepy", "scary"};
    m.config.dim = 2;
    std::vector<std::vector<float>> vecs = {
        {1.0f, 0.0f}, {0.9f, 0.1f}, {0.0f, 1.0f}, {0.1f, 0.9f}};
    for (size_t i = 0; i < m.words.size(); ++i) {
        m.vocab[m.words[i]] = static_cast<int>(i);
        m.counts.push_back(10);
        m.vectors.insert(m.vectors.end(), vecs[i].begin(), vecs[i].end());
    }
    return m;
}

std::vector<GeoPoint> blob(std::mt19937_64& rng, double lat, double lon, double sigma_m,
                           int count) {
    std::normal_distribution<double> dlat(0.0, sigma_m / 111320.0);
    std::normal_distribution<double> dlon(0.0,
                                          sigma_m / (111320.0 * std::cos(lat * M_PI / 180)));
    std::vector<GeoPoint> pts;
    for (int i = 0; i < count; ++i)
        pts.push_back({lat + dlat(rng), lon + dlon(rng)});
    return pts;
}

// Adjusted Rand Index between two labelings (noise = -1 is its own class).
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    REQUIRE(a.size() == b.size());
    std::map<std::pair<int, int>, double> joint;
    std::map<int, double> ca, cb;
    for (size_t i = 0; i < a.size(); ++i) {
        joint[{a[i], b[i]}] += 1;
        ca[a[i]] += 1;
        cb[b[i]] += 1;
    }
    auto comb2 = [](double x) { return x * (x - 1) / 2.0; };
    double sum_joint = 0, sum_a = 0, sum_b = 0;
    for (auto& [k, v] : joint)
        sum_joint += comb2(v);
    for (auto& [k, v] : ca)
        sum_a += comb2(v);
    for (auto& [k, v] : cb)
        sum_b += comb2(v);
    double n = comb2(static_cast<double>(a.size()));
    double expected = sum_a * sum_b / n;
    double max_index = (sum_a + sum_b) / 2.0;
    return (sum_joint - expected) / (max_index - expected);
}

} // namespace

TEST_CASE("haversine identities") {
    // 0.01 degrees of latitude at Chicago's longitude
    CHECK(haversine_m(41.8781, -87.6298, 41.8881, -87.6298) ==
          doctest::Approx(1111.9).epsilon(0.0005));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ulat(-89, 89), ulon(-180, 180);
    for (int i = 0; i < 500; ++i) {
        GeoPoint p{ulat(rng), ulon(rng)}, q{ulat(rng), ulon(rng)}, r{ulat(rng), ulon(rng)};
        CHECK(haversine_m(p, q) == haversine_m(q, p));
        CHECK(haversine_m(p, p) == 0.0);
        double pq = haversine_m(p, q), qr = haversine_m(q, r), pr = haversine_m(p, r);
        CHECK(pr <= (pq + qr) * (1 + 1e-6) + 1e-9);
    }
}

TEST_CASE("spherical mean stays near dense points") {
    std::vector<GeoPoint> pts = {{41.88, -87.63}, {41.89, -87.64}, {41.90, -87.62}};
    auto c = spherical_mean(pts);
    CHECK(c.lat == doctest::Approx(41.89).epsilon(1e-4));
    CHECK(c.lon == doctest::Approx(-87.63).epsilon(1e-4));
}

TEST_CASE("spatial noise filter boundary semantics") {
    std::vector<Document> docs;
    for (int i = 0; i < 12; ++i)
        docs.push_back(geo_doc("hot" + std::to_string(i), 41.9, -87.6));
    for (int i = 0; i < 9; ++i)
        docs.push_back(geo_doc("ok" + std::to_string(i), 41.8, -87.5));
    SUBCASE("group at or above the threshold is removed entirely") {
        auto out = spatial_noise_filter(docs, 10);
        CHECK(out.size() == 9);
        for (const auto& d : out)
            CHECK(d.id.starts_with("ok"));
    }
    SUBCASE("group below the threshold passes through in order") {
        auto out = spatial_noise_filter(docs, 13);
        CHECK(out.size() == 21);
        CHECK(out[0].id == "hot0");
    }
    SUBCASE("exactly threshold occupants are removed, threshold-1 kept") {
        std::vector<Document> at;
        for (int i = 0; i < 10; ++i)
            at.push_back(geo_doc("a" + std::to_string(i), 1.0, 2.0));
        for (int i = 0; i < 9; ++i)
            at.push_back(geo_doc("b" + std::to_string(i), 3.0, 4.0));
        auto out = spatial_noise_filter(at, 10);
        CHECK(out.size() == 9);
        for (const auto& d : out)
            CHECK(d.id[0] == 'b');
    }
}

TEST_CASE("dictionary matching by stems") {
    auto dict = two_label_dict();
    SUBCASE("single membership") {
        auto labels = match_labels(geo_doc("d", 0, 0, 0, {"great", "park"}), dict);
        CHECK(labels == std::vector<std::string>{"GREAT"});
    }
    SUBCASE("multiple labels for multiple communities") {
        auto labels = match_labels(geo_doc("d", 0, 0, 0, {"great", "creepi"}), dict);
        CHECK(labels == std::vector<std::string>{"CREEPY", "GREAT"});
    }
    SUBCASE("no dictionary stems means empty") {
        CHECK(match_labels(geo_doc("d", 0, 0, 0, {"park", "street"}), dict).empty());
    }
}

TEST_CASE("semantic filter keeps strictly above the cutoff") {
    auto dict = two_label_dict();
    auto model = axis_model();
    std::vector<LabeledDocument> docs;
    // doc aligned with GREAT centroid scores high
    docs.push_back({geo_doc("hi", 0, 0, 0, {"amazing", "great"}), {"GREAT"}, 0.0});
    // doc aligned with the CREEPY axis but labeled GREAT scores low
    docs.push_back({geo_doc("lo", 0, 0, 0, {"creepy", "scary"}), {"GREAT"}, 0.0});
    auto kept = semantic_filter(docs, model, dict, 18.0);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].doc.id == "hi");
    CHECK(kept[0].semantic_score > 18.0);

    SUBCASE("threshold equal to the score drops the document") {
        auto all = semantic_filter(docs, model, dict, -1.0); // keep both, scores filled
        REQUIRE(all.size() == 2);
        double s = all[0].semantic_score;
        std::vector<LabeledDocument> again = {all[0]};
        CHECK(semantic_filter(again, model, dict, s).empty()); // score > s is false
        CHECK(semantic_filter(again, model, dict, std::nextafter(s, 0.0)).size() == 1);
    }
}

TEST_CASE("monthly partition on UTC boundaries") {
    std::vector<LabeledDocument> docs;
    auto add = [&](const std::string& id, int64_t ts) {
        docs.push_back({geo_doc(id, 0, 0, ts), {"GREAT"}, 50.0});
    };
    SUBCASE("empty input gives an empty map") {
        CHECK(partition_by_month({}).empty());
    }
    SUBCASE("documents seconds apart land in different months") {
        add("jan", timestamp_of_utc(2018, 1, 31, 23, 59, 59));
        add("feb", timestamp_of_utc(2018, 2, 1, 0, 0, 0));
        auto parts = partition_by_month(docs);
        REQUIRE(parts.size() == 2);
        CHECK(parts.at(YearMonth{2018, 1}).size() == 1);
        CHECK(parts.at(YearMonth{2018, 2}).size() == 1);
        CHECK(parts.at(YearMonth{2018, 1})[0].doc.id == "jan");
    }
    SUBCASE("one month keeps everything together") {
        for (int i = 0; i < 10; ++i)
            add("d" + std::to_string(i), timestamp_of_utc(2018, 3, 1 + i, 12, 0, 0));
        auto parts = partition_by_month(docs);
        REQUIRE(parts.size() == 1);
        CHECK(parts.begin()->second.size() == 10);
    }
}

TEST_CASE("hdbscan recovers two separated blobs") {
    std::mt19937_64 rng(8);
    auto pts = blob(rng, 41.88, -87.63, 50.0, 50);
    auto far = blob(rng, 41.97, -87.63, 50.0, 50); // ~10 km north
    std::vector<int> truth(50, 0);
    truth.insert(truth.end(), 50, 1);
    pts.insert(pts.end(), far.begin(), far.end());
    auto res = hdbscan_geo(pts, 5);
    CHECK(res.n_clusters == 2);
    CHECK(adjusted_rand_index(truth, res.labels) >= 0.9);
}

TEST_CASE("hdbscan degenerate inputs") {
    SUBCASE("fewer points than the minimum cluster size are all noise") {
        std::vector<GeoPoint> pts = {{1, 1}, {1.001, 1}, {1, 1.001}};
        auto res = hdbscan_geo(pts, 5);
        CHECK(res.n_clusters == 0);
        CHECK(std::count(res.labels.begin(), res.labels.end(), -1) == 3);
    }
    SUBCASE("sparse uniform scatter is mostly noise") {
        // ~10 km square at a density far below anything clusterable
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> ulat(41.85, 41.94);
        std::uniform_real_distribution<double> ulon(-87.70, -87.579);
        std::vector<GeoPoint> pts;
        for (int i = 0; i < 18; ++i)
            pts.push_back({ulat(rng), ulon(rng)});
        auto res = hdbscan_geo(pts, 5);
        double noise =
            static_cast<double>(std::count(res.labels.begin(), res.labels.end(), -1)) /
            static_cast<double>(pts.size());
        CHECK(noise > 0.5);
    }
    SUBCASE("coincident points do not break the hierarchy") {
        std::vector<GeoPoint> pts(8, GeoPoint{41.9, -87.6});
        auto more = pts;
        for (int i = 0; i < 8; ++i)
            more.push_back({41.99, -87.6});
        auto res = hdbscan_geo(more, 5);
        CHECK(res.labels.size() == 16);
        CHECK(res.n_clusters >= 0); // must simply not crash or hang
    }
}

TEST_CASE("cluster_spatial is permutation invariant and keeps labels") {
    std::mt19937_64 rng(10);
    std::vector<LabeledDocument> docs;
    int id = 0;
    for (const auto& p : blob(rng, 41.88, -87.63, 40.0, 30))
        docs.push_back({geo_doc("a" + std::to_string(id++), p.lat, p.lon,
                                timestamp_of_utc(2018, 1, 5, 0, 0, 0), {"great"}),
                        {"GREAT", "LIVELY"},
                        44.0});
    for (const auto& p : blob(rng, 41.95, -87.63, 40.0, 30))
        docs.push_back({geo_doc("b" + std::to_string(id++), p.lat, p.lon,
                                timestamp_of_utc(2018, 1, 6, 0, 0, 0), {"creepi"}),
                        {"CREEPY"},
                        44.0});

    auto [clusters, noise] = cluster_spatial(docs, YearMonth{2018, 1}, 5);
    CHECK(clusters.size() == 2);
    for (const auto& c : clusters) {
        CHECK(c.members.size() >= 5);
        CHECK(c.month == YearMonth{2018, 1});
        for (const auto& m : c.members)
            CHECK(!m.labels.empty());
    }

    auto shuffled = docs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto [clusters2, noise2] = cluster_spatial(shuffled, YearMonth{2018, 1}, 5);
    REQUIRE(clusters2.size() == clusters.size());
    for (size_t i = 0; i < clusters.size(); ++i) {
        REQUIRE(clusters2[i].members.size() == clusters[i].members.size());
        for (size_t j = 0; j < clusters[i].members.size(); ++j) {
            CHECK(clusters2[i].members[j].doc.id == clusters[i].members[j].doc.id);
            CHECK(clusters2[i].members[j].labels == clusters[i].members[j].labels);
        }
        CHECK(clusters2[i].centroid == clusters[i].centroid);
    }
    CHECK(noise2.size() == noise.size());
}

TEST_CASE("centroid satisfies the cluster invariant") {
    std::mt19937_64 rng(11);
    std::vector<LabeledDocument> docs;
    int id = 0;
    for (const auto& p : blob(rng, 41.90, -87.60, 30.0, 20))
        docs.push_back({geo_doc("x" + std::to_string(id++), p.lat, p.lon, 0, {"great"}),
                        {"GREAT"},
                        44.0});
    for (const auto& p : blob(rng, 41.96, -87.60, 30.0, 20))
        docs.push_back({geo_doc("y" + std::to_string(id++), p.lat, p.lon, 0, {"great"}),
                        {"GREAT"},
                        44.0});
    auto [clusters, noise] = cluster_spatial(docs, YearMonth{2018, 2}, 5);
    REQUIRE(clusters.size() == 2);
    for (const auto& cl : clusters) {
        std::vector<GeoPoint> pts;
        for (const auto& m : cl.members)
            pts.push_back(*m.doc.geo);
        CHECK(cl.centroid == spherical_mean(pts));
    }
    // each centroid sits on one of the planted blob centres
    for (const auto& cl : clusters) {
        double d1 = haversine_m(cl.centroid, GeoPoint{41.90, -87.60});
        double d2 = haversine_m(cl.centroid, GeoPoint{41.96, -87.60});
        CHECK(std::min(d1, d2) < 100.0);
    }
}

TEST_CASE("full pipeline composition and stage monotonicity") {
    auto dict = two_label_dict();
    auto model = axis_model();
    PipelineConfig cfg;
    cfg.max_coincident = 10;
    cfg.semantic_cutoff = 18.0;
    cfg.min_cluster_size = 5;

    SUBCASE("empty corpus gives all-zero stages") {
        auto res = extract_perceptions({}, dict, model, cfg);
        CHECK(res.report.total == 0);
        CHECK(res.report.after_spatial == 0);
        CHECK(res.report.matched == 0);
        CHECK(res.report.after_semantic == 0);
        CHECK(res.clusters.empty());
    }

    SUBCASE("stages never grow, labels survive clustering") {
        std::mt19937_64 rng(12);
        std::vector<Document> corpus;
        int id = 0;
        // bot hotspot
        for (int i = 0; i < 11; ++i)
            corpus.push_back(geo_doc("bot" + std::to_string(i), 41.901, -87.601,
                                     timestamp_of_utc(2018, 1, 2, 0, 0, 0), {"great"}));
        // clusterable labeled docs
        for (const auto& p : blob(rng, 41.88, -87.63, 40.0, 30))
            corpus.push_back(geo_doc("c" + std::to_string(id++), p.lat, p.lon,
                                     timestamp_of_utc(2018, 1, 3, 0, 0, 0),
                                     {"amaz", "great"}));
        // unlabeled docs
        for (const auto& p : blob(rng, 41.92, -87.58, 500.0, 20))
            corpus.push_back(geo_doc("u" + std::to_string(id++), p.lat, p.lon,
                                     timestamp_of_utc(2018, 1, 4, 0, 0, 0), {"park"}));
        // labeled but semantically misaligned docs
        for (const auto& p : blob(rng, 41.93, -87.59, 500.0, 10))
            corpus.push_back(geo_doc("m" + std::to_string(id++), p.lat, p.lon,
                                     timestamp_of_utc(2018, 1, 5, 0, 0, 0),
                                     {"creepi", "great"}));

        auto res = extract_perceptions(corpus, dict, model, cfg);
        CHECK(res.report.total == corpus.size());
        CHECK(res.report.after_spatial <= res.report.total);
        CHECK(res.report.matched <= res.report.after_spatial);
        CHECK(res.report.after_semantic <= res.report.matched);
        CHECK(res.report.after_spatial == corpus.size() - 11);
        size_t clustered = 0;
        for (const auto& c : res.clusters) {
            clustered += c.members.size();
            for (const auto& m : c.members) {
                CHECK(!m.labels.empty());
                CHECK(m.semantic_score > cfg.semantic_cutoff);
            }
        }
        CHECK(clustered + res.noise.size() == res.report.after_semantic);
    }

    SUBCASE("fuzzed corpora keep the stage ordering") {
        std::mt19937_64 rng(13);
        for (int iter = 0; iter < 20; ++iter) {
            std::vector<Document> corpus;
            int n = static_cast<int>(rng() % 60);
            for (int i = 0; i < n; ++i) {
                double lat = 41.8 + (static_cast<double>(rng() % 100) / 1000.0);
                double lon = -87.7 + (static_cast<double>(rng() % 100) / 1000.0);
                std::vector<std::string> stems;
                switch (rng() % 4) {
                case 0: stems = {"great"}; break;
                case 1: stems = {"creepi", "great"}; break;
                case 2: stems = {"park"}; break;
                default: break; // empty document
                }
                auto d = geo_doc("f" + std::to_string(i), lat, lon,
                                 timestamp_of_utc(2018, 1 + static_cast<int>(rng() % 3), 2, 0,
                                                  0, 0),
                                 stems);
                corpus.push_back(std::move(d));
            }
            auto res = extract_perceptions(corpus, dict, model, cfg);
            CHECK(res.report.total == corpus.size());
            CHECK(res.report.after_spatial <= res.report.total);
            CHECK(res.report.matched <= res.report.after_spatial);
            CHECK(res.report.after_semantic <= res.report.matched);
        }
    }
}

TEST_CASE("stage report CSV mirrors the pipeline stages") {
    StageReport report;
    report.total = 100;
    report.after_spatial = 80;
    report.matched = 40;
    report.after_semantic = 30;
    report.month_clusters[{2018, 1}] = 3;
    report.month_clusters[{2018, 2}] = 2;
    report.noise = 5;
    test::TempFile f("stages");
    write_stage_csv(report, "unit", f.path());
    std::ifstream in(f.path());
    std::string line;
    std::getline(in, line);
    CHECK(line == "stage,count,label");
    std::getline(in, line);
    CHECK(line == "total_documents,100,unit");
    std::getline(in, line);
    CHECK(line == "after_spatial_filter,80,unit");
    std::getline(in, line);
    CHECK(line == "matched_dictionary,40,unit");
    std::getline(in, line);
    CHECK(line == "after_semantic_filter,30,unit");
    std::getline(in, line);
    CHECK(line == "clusters_2018-01,3,unit");
    std::getline(in, line);
    CHECK(line == "clusters_2018-02,2,unit");
    std::getline(in, line);
    CHECK(line == "noise_documents,5,unit");
}
