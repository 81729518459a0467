// Regenerates data/sample: a seeded synthetic review corpus with two planted
// qualifier groups of opposite polarity, a geolocated corpus with planted
// spatial clusters, lexicon files, neighborhood polygons and an external
// comparison point set. Everything a subcommand needs to run offline.

#include "uop/corpus_io.hpp"
#include "uop/util.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace uop;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kPositive = {"great",    "amazing",  "awesome",
                                            "wonderful", "lovely",   "charming",
                                            "pleasant",  "delightful"};
const std::vector<std::string> kNegative = {"creepy", "scary", "filthy", "dangerous",
                                            "awful",  "nasty", "gloomy", "dreadful"};
const std::vector<std::string> kDistractors = {"busy",  "quiet", "cheap", "modern",
                                               "tiny",  "huge",  "bright", "plain"};
const std::vector<std::string> kFillers = {
    "park",   "street", "plaza",   "river",  "bridge",  "museum", "market",  "garden",
    "walk",   "visit",  "place",   "corner", "path",    "fountain", "square", "evening",
    "morning", "crowd",  "music",   "food",   "coffee",  "view",   "bench",   "tower",
    "harbor", "station", "trail",   "lawn",   "pond",    "gallery"};
const std::vector<std::string> kGlue = {"the", "a", "is", "was", "and", "we", "it", "this"};

struct Sentences {
    std::mt19937_64 rng{424242};

    template <typename T> const T& pick(const std::vector<T>& v) {
        return v[rng() % v.size()];
    }

    // group: 0 positive, 1 negative, 2 distractor-flavored
    std::string sentence(int group) {
        const auto& qualifiers =
            group == 0 ? kPositive : (group == 1 ? kNegative : kDistractors);
        int n_qual = group == 2 ? 1 : 2 + static_cast<int>(rng() % 2);
        int n_fill = 2 + static_cast<int>(rng() % 3);
        std::string s;
        for (int i = 0; i < n_qual; ++i) {
            // rare cross-group word keeps the graph honest
            bool cross = group != 2 && rng() % 50 == 0;
            const auto& pool = cross ? (group == 0 ? kNegative : kPositive) : qualifiers;
            s += pick(kGlue) + " " + pick(pool) + " ";
        }
        for (int i = 0; i < n_fill; ++i)
            s += pick(kFillers) + " ";
        if (rng() % 6 == 0)
            s += "i'm happy here ";
        if (rng() % 10 == 0)
            s += "check http://example.com/" + std::to_string(rng() % 1000) + " ";
        if (rng() % 8 == 0)
            s += std::to_string(2010 + rng() % 9) + " ";
        s += (rng() % 4 == 0) ? "!" : ".";
        return s;
    }
};

int64_t random_ts(std::mt19937_64& rng, int month) {
    // months are 1..3 of 2018
    int64_t start = timestamp_of_utc(2018, month, 1, 0, 0, 0);
    int64_t days = month == 2 ? 28 : 31;
    return start + static_cast<int64_t>(rng() % (days * 86400));
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream out(path);
    for (const auto& l : lines)
        out << l << '\n';
}

} // namespace

int main(int argc, char** argv) {
    std::string root = argc > 1 ? argv[1] : "data/sample";
    fs::create_directories(root + "/lexicons");

    // ---- lexicons ----
    write_lines(root + "/lexicons/stopwords.txt",
                {"a",    "an",   "and",  "are",  "as",   "at",   "be",   "but",  "by",
                 "for",  "from", "had",  "has",  "have", "he",   "her",  "here", "him",
                 "his",  "i",    "if",   "in",   "into", "is",   "it",   "its",  "me",
                 "my",   "no",   "not",  "of",   "on",   "or",   "our",  "she",  "so",
                 "that", "the",  "their", "them", "then", "there", "these", "they", "this",
                 "to",   "us",   "was",  "we",   "were", "what", "when", "where", "which",
                 "while", "who",  "will", "with", "you",  "your", "am",   "been", "do",
                 "did",  "does", "how",  "than", "too",  "very", "just", "about", "up",
                 "out",  "over", "under", "again", "once", "only", "own",  "same", "such"});
    write_lines(root + "/lexicons/contractions.tsv",
                {"i'm\ti am",       "it's\tit is",     "that's\tthat is", "aren't\tare not",
                 "isn't\tis not",   "wasn't\twas not", "don't\tdo not",   "doesn't\tdoes not",
                 "didn't\tdid not", "can't\tcan not",  "couldn't\tcould not",
                 "won't\twill not", "wouldn't\twould not", "we're\twe are",
                 "they're\tthey are", "you're\tyou are", "i've\ti have",  "we've\twe have",
                 "i'll\ti will",    "we'll\twe will",  "he's\the is",     "she's\tshe is",
                 "there's\tthere is", "let's\tlet us"});
    write_lines(root + "/lexicons/sentiment.tsv",
                {"great\t0.8",     "amazing\t0.9",  "awesome\t0.85", "wonderful\t0.85",
                 "lovely\t0.75",   "charming\t0.7", "pleasant\t0.65", "delightful\t0.8",
                 "creepy\t-0.75",  "scary\t-0.7",   "filthy\t-0.8",  "dangerous\t-0.85",
                 "awful\t-0.9",    "nasty\t-0.8",   "gloomy\t-0.6",  "dreadful\t-0.85",
                 "happy\t0.8",     "nice\t0.6",     "bad\t-0.7",     "bright\t0.3",
                 "wealthy\t0.6",   "beautiful\t0.85", "boring\t-0.5", "depressing\t-0.8",
                 "lively\t0.35"});
    {
        std::vector<std::string> adjectives;
        for (const auto& w : kPositive)
            adjectives.push_back(w);
        for (const auto& w : kNegative)
            adjectives.push_back(w);
        for (const auto& w : kDistractors)
            adjectives.push_back(w);
        for (const auto& w : {"happy", "nice", "bad", "beautiful", "boring", "lively",
                              "wealthy", "depressing", "big", "small", "new", "old"})
            adjectives.push_back(w);
        write_lines(root + "/lexicons/adjectives.txt", adjectives);
    }

    // ---- review corpus (dictionary training) ----
    {
        Sentences gen;
        std::vector<RawRecord> reviews;
        for (int i = 0; i < 3000; ++i) {
            // 45% positive, 45% negative, 10% distractor chatter
            uint64_t roll = gen.rng() % 100;
            int group = roll < 45 ? 0 : (roll < 90 ? 1 : 2);
            std::string text = gen.sentence(group);
            if (gen.rng() % 3 == 0)
                text += " " + gen.sentence(group);
            RawRecord r;
            char id[16];
            std::snprintf(id, sizeof(id), "r%05d", i);
            r.id = id;
            r.text = text;
            r.timestamp = timestamp_of_utc(2016, 1 + static_cast<int>(gen.rng() % 12),
                                           1 + static_cast<int>(gen.rng() % 28),
                                           static_cast<int>(gen.rng() % 24), 0, 0);
            reviews.push_back(std::move(r));
        }
        write_corpus(reviews, root + "/reviews.jsonl");
    }

    // ---- geolocated corpus (extraction) ----
    {
        Sentences gen;
        gen.rng.seed(777777);
        std::vector<RawRecord> docs;
        int next_id = 0;
        auto add_doc = [&](double lat, double lon, int group, int month) {
            RawRecord r;
            char id[16];
            std::snprintf(id, sizeof(id), "g%05d", next_id++);
            r.id = id;
            r.text = gen.sentence(group);
            r.timestamp = random_ts(gen.rng, month);
            r.geo = GeoPoint{lat, lon};
            docs.push_back(std::move(r));
        };
        // inflected qualifier forms share a stem with the dictionary but are
        // absent from the embedding vocabulary; with otherwise unseen words
        // around them these documents get labeled yet fail the semantic cut
        const std::vector<std::string> inflected = {"charms",     "greatness", "awesomely",
                                                    "nastiness",  "gloominess", "filthiness",
                                                    "wonders",    "dangers"};
        const std::vector<std::string> unseen = {"clocktower", "ledger",   "warehouse",
                                                 "gearbox",    "scaffold", "manifold",
                                                 "turbine",    "quarry"};
        auto add_collision_doc = [&](double lat, double lon, int month) {
            RawRecord r;
            char id[16];
            std::snprintf(id, sizeof(id), "g%05d", next_id++);
            r.id = id;
            r.text = "the " + inflected[gen.rng() % inflected.size()] + " of the " +
                     unseen[gen.rng() % unseen.size()] + " " +
                     unseen[gen.rng() % unseen.size()];
            r.timestamp = random_ts(gen.rng, month);
            r.geo = GeoPoint{lat, lon};
            docs.push_back(std::move(r));
        };
        std::normal_distribution<double> jitter(0.0, 0.00055); // ~60 m
        struct Blob {
            double lat, lon;
            int group;
            int count;
        };
        // riverside positive, oldtown negative, eastgate mixed
        const Blob blobs[] = {{41.8800, -87.6300, 0, 60},
                              {41.9100, -87.6400, 1, 50},
                              {41.8950, -87.6000, 2, 20},
                              {41.8950, -87.6000, 0, 20}};
        for (int month = 1; month <= 3; ++month) {
            for (const auto& b : blobs)
                for (int i = 0; i < b.count; ++i)
                    add_doc(b.lat + jitter(gen.rng), b.lon + jitter(gen.rng),
                            b.group == 2 ? (i % 2 == 0 ? 0 : 1) : b.group, month);
            // citywide scatter; half carries no qualifier at all
            std::uniform_real_distribution<double> ulat(41.86, 41.93);
            std::uniform_real_distribution<double> ulon(-87.66, -87.58);
            for (int i = 0; i < 150; ++i) {
                double lat = ulat(gen.rng), lon = ulon(gen.rng);
                if (i % 2 == 0) {
                    add_doc(lat, lon, static_cast<int>(gen.rng() % 2), month);
                } else {
                    RawRecord r;
                    char id[16];
                    std::snprintf(id, sizeof(id), "g%05d", next_id++);
                    r.id = id;
                    r.text = "meeting downtown about the new project schedule";
                    r.timestamp = random_ts(gen.rng, month);
                    r.geo = GeoPoint{lat, lon};
                    docs.push_back(std::move(r));
                }
            }
            // stem-collision chatter, scattered citywide
            std::uniform_real_distribution<double> clat(41.86, 41.93);
            std::uniform_real_distribution<double> clon(-87.66, -87.58);
            for (int i = 0; i < 30; ++i)
                add_collision_doc(clat(gen.rng), clon(gen.rng), month);
            // bot hotspot: identical coordinates, above the spatial threshold
            for (int i = 0; i < 15; ++i)
                add_doc(41.9000, -87.6200, 0, month);
        }
        write_corpus(docs, root + "/geo.jsonl");
    }

    // ---- neighborhoods ----
    {
        json fc;
        fc["type"] = "FeatureCollection";
        fc["features"] = json::array();
        auto add_box = [&](const std::string& name, double lat, double lon, double half) {
            json f;
            f["type"] = "Feature";
            f["properties"]["name"] = name;
            f["geometry"]["type"] = "Polygon";
            f["geometry"]["coordinates"] = {{{lon - half, lat - half},
                                             {lon + half, lat - half},
                                             {lon + half, lat + half},
                                             {lon - half, lat + half},
                                             {lon - half, lat - half}}};
            fc["features"].push_back(std::move(f));
        };
        add_box("riverside", 41.8800, -87.6300, 0.0080);
        add_box("oldtown", 41.9100, -87.6400, 0.0080);
        add_box("eastgate", 41.8950, -87.6000, 0.0080);
        std::ofstream out(root + "/neighborhoods.geojson");
        out << fc.dump(2) << '\n';
    }

    // ---- external comparison points ----
    {
        std::mt19937_64 rng(99999);
        std::normal_distribution<double> jitter(0.0, 0.0012);
        std::ofstream out(root + "/external_points.csv");
        out << "label,lat,lon\n";
        auto emit = [&](const std::string& label, double lat, double lon, int n) {
            for (int i = 0; i < n; ++i) {
                out << label << ',' << format_double(lat + jitter(rng)) << ','
                    << format_double(lon + jitter(rng)) << '\n';
            }
        };
        emit("wealthy", 41.8800, -87.6300, 8);
        emit("beautiful", 41.8800, -87.6300, 8);
        emit("safety", 41.8805, -87.6295, 6);
        emit("boring", 41.9100, -87.6400, 7);
        emit("depressing", 41.9100, -87.6400, 7);
        emit("lively", 41.8950, -87.6000, 8);
        emit("lively", 41.9100, -87.6395, 4);
    }

    // ---- pipeline config ----
    {
        std::ofstream out(root + "/uop.conf");
        out << "# synthetic sample pipeline\n"
            << "alpha = 0.8\n"
            << "beta = 1.13\n"
            << "clique_size = 4\n"
            << "window = 5\n"
            << "min_count = 5\n"
            << "dim = 48\n"
            << "epochs = 20\n"
            << "learning_rate = 0.05\n"
            << "seed = 42\n"
            << "workers = 1\n"
            << "max_coincident = 10\n"
            << "semantic_cutoff = 18\n"
            << "min_cluster_size = 5\n"
            << "run_label = sample\n"
            << "label_override.great = GREAT\n"
            << "label_override.creepy = CREEPY\n"
            << "reviews = reviews.jsonl\n"
            << "geo_corpus = geo.jsonl\n"
            << "lexicon_dir = lexicons\n"
            << "neighborhoods = neighborhoods.geojson\n"
            << "external_points = external_points.csv\n"
            << "out_dir = out\n"
            << "dictionary = out/dictionary.txt\n"
            << "model = out/model.txt\n"
            << "geojson = out/perceptions.geojson\n";
    }

    std::cout << "sample written to " << root << '\n';
    return 0;
}
