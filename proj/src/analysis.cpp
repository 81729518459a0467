#include "uop/analysis.hpp"

#include "uop/error.hpp"
#include "uop/geo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>

namespace uop {

CountTensor count_points(const std::vector<PerceptionCluster>& clusters,
                         const std::vector<NamedRing>& neighborhoods,
                         const std::vector<std::string>& categories) {
    CountTensor t;
    t.categories = categories;
    std::set<YearMonth> months;
    for (const auto& c : clusters)
        months.insert(c.month);
    t.months.assign(months.begin(), months.end());
    for (const auto& n : neighborhoods)
        t.neighborhoods.push_back(n.name);
    t.counts.assign(t.categories.size() * t.months.size() * t.neighborhoods.size(), 0);

    std::map<std::string, size_t> cat_index;
    for (size_t i = 0; i < categories.size(); ++i)
        cat_index[categories[i]] = i;
    std::map<YearMonth, size_t> month_index;
    for (size_t j = 0; j < t.months.size(); ++j)
        month_index[t.months[j]] = j;

    for (const auto& cluster : clusters) {
        size_t j = month_index.at(cluster.month);
        for (const auto& member : cluster.members) {
            const GeoPoint& p = *member.doc.geo;
            for (size_t n = 0; n < neighborhoods.size(); ++n) {
                if (!point_in_ring(p, neighborhoods[n].ring))
                    continue;
                for (const auto& label : member.labels) {
                    auto it = cat_index.find(label);
                    if (it != cat_index.end())
                        ++t.at(it->second, j, n);
                }
            }
        }
    }
    return t;
}

ZScoreReport z_scores(const CountTensor& counts, StdDivisor divisor) {
    size_t n_nbhd = counts.neighborhoods.size();
    if (n_nbhd < 2)
        throw Error("z-scores need at least 2 neighborhoods");
    ZScoreReport report;
    report.divisor = divisor;
    double denom = divisor == StdDivisor::population ? static_cast<double>(n_nbhd)
                                                     : static_cast<double>(n_nbhd - 1);
    for (size_t i = 0; i < counts.categories.size(); ++i) {
        for (size_t j = 0; j < counts.months.size(); ++j) {
            double mean = 0.0;
            for (size_t n = 0; n < n_nbhd; ++n)
                mean += static_cast<double>(counts.at(i, j, n));
            mean /= static_cast<double>(n_nbhd);
            double ss = 0.0;
            for (size_t n = 0; n < n_nbhd; ++n) {
                double d = static_cast<double>(counts.at(i, j, n)) - mean;
                ss += d * d;
            }
            double sigma = std::sqrt(ss / denom);
            for (size_t n = 0; n < n_nbhd; ++n) {
                ZScoreEntry e;
                e.category = counts.categories[i];
                e.month = counts.months[j];
                e.neighborhood = counts.neighborhoods[n];
                e.count = counts.at(i, j, n);
                e.mean = mean;
                e.stddev = sigma;
                e.z = sigma > 0.0 ? (static_cast<double>(e.count) - mean) / sigma : 0.0;
                report.entries.push_back(std::move(e));
            }
        }
    }
    return report;
}

PolarityClass polarity_class(const std::string& label) {
    static const std::map<std::string, PolarityClass> table = {
        // canonical perception categories
        {"GREAT", PolarityClass::positive},
        {"RESPECTFUL", PolarityClass::positive},
        {"SPECTACULAR", PolarityClass::positive},
        {"LIVELY", PolarityClass::neutral},
        {"AGGRESSIVE", PolarityClass::negative},
        {"WRONG", PolarityClass::negative},
        {"DEAD", PolarityClass::negative},
        {"CREEPY", PolarityClass::negative},
        // external comparison labels
        {"wealthy", PolarityClass::positive},
        {"beautiful", PolarityClass::positive},
        {"safety", PolarityClass::positive},
        {"lively", PolarityClass::neutral},
        {"boring", PolarityClass::negative},
        {"depressing", PolarityClass::negative},
    };
    auto it = table.find(label);
    if (it == table.end())
        throw Error("unknown perception label: " + label);
    return it->second;
}

const char* polarity_name(PolarityClass p) {
    switch (p) {
    case PolarityClass::positive:
        return "positive";
    case PolarityClass::negative:
        return "negative";
    default:
        return "neutral";
    }
}

std::vector<DistanceEntry> nearest_distance_report(std::span<const PolarizedPoint> external,
                                                   std::span<const PolarizedPoint> ours,
                                                   const std::vector<NamedRing>& neighborhoods,
                                                   bool citywide) {
    std::vector<DistanceEntry> out;
    const PolarityClass classes[] = {PolarityClass::positive, PolarityClass::negative,
                                     PolarityClass::neutral};
    for (const auto& nbhd : neighborhoods) {
        for (PolarityClass pc : classes) {
            DistanceEntry entry;
            entry.neighborhood = nbhd.name;
            entry.polarity = pc;

            std::vector<const PolarizedPoint*> ext;
            for (const auto& p : external)
                if (p.polarity == pc && point_in_ring(p.pos, nbhd.ring))
                    ext.push_back(&p);
            std::vector<const PolarizedPoint*> counterpart;
            for (const auto& p : ours)
                if (p.polarity == pc && (citywide || point_in_ring(p.pos, nbhd.ring)))
                    counterpart.push_back(&p);

            if (ext.empty() || counterpart.empty()) {
                entry.absent = true;
                out.push_back(std::move(entry));
                continue;
            }
            std::vector<double> dists;
            dists.reserve(ext.size());
            for (const auto* e : ext) {
                double best = std::numeric_limits<double>::infinity();
                for (const auto* c : counterpart)
                    best = std::min(best, haversine_m(e->pos, c->pos));
                dists.push_back(best);
            }
            double mean = 0.0;
            for (double d : dists)
                mean += d;
            mean /= static_cast<double>(dists.size());
            entry.mean_m = mean;
            entry.n_points = dists.size();
            if (dists.size() < 2) {
                entry.ci_low_m = mean;
                entry.ci_high_m = mean;
                entry.small_sample = true;
            } else {
                double ss = 0.0;
                for (double d : dists)
                    ss += (d - mean) * (d - mean);
                double std_err = std::sqrt(ss / static_cast<double>(dists.size() - 1)) /
                                 std::sqrt(static_cast<double>(dists.size()));
                entry.ci_low_m = mean - 1.96 * std_err;
                entry.ci_high_m = mean + 1.96 * std_err;
            }
            out.push_back(std::move(entry));
        }
    }
    return out;
}

std::vector<std::pair<std::string, int64_t>> term_frequencies(
    const std::vector<Document>& docs) {
    std::map<std::string, int64_t> freq;
    for (const auto& d : docs)
        for (const auto& s : d.sentences)
            for (const auto& stem : s.stems)
                ++freq[stem];
    std::vector<std::pair<std::string, int64_t>> out(freq.begin(), freq.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

void write_zscore_csv(const ZScoreReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write z-score report: " + path);
    out << "category,month,neighborhood,count,mean,std,z\n";
    for (const auto& e : report.entries)
        out << e.category << ',' << format_year_month(e.month) << ',' << e.neighborhood << ','
            << e.count << ',' << format_double(e.mean) << ',' << format_double(e.stddev) << ','
            << format_double(e.z) << '\n';
}

void write_distance_csv(const std::vector<DistanceEntry>& entries, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write distance report: " + path);
    out << "neighborhood,polarity,mean_m,ci_low_m,ci_high_m,n_points\n";
    for (const auto& e : entries) {
        out << e.neighborhood << ',' << polarity_name(e.polarity) << ',';
        if (e.absent)
            out << ",,,0\n";
        else
            out << format_double(e.mean_m) << ',' << format_double(e.ci_low_m) << ','
                << format_double(e.ci_high_m) << ',' << e.n_points << '\n';
    }
}

void write_term_csv(const std::vector<std::pair<std::string, int64_t>>& terms,
                    const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write term report: " + path);
    out << "stem,count\n";
    for (const auto& [stem, count] : terms)
        out << stem << ',' << count << '\n';
}

} // namespace uop
