#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "swarm/geometry.hpp"

namespace swarm {

/// Per-tick snapshot written to the metrics CSV.
struct TickRecord {
    std::int64_t tick = 0;
    double order = 0.0;
    double mean_speed = 0.0;      // m/s, nominal robots
    double centroid_speed = 0.0;  // m/s, drift of the nominal centroid
    double fp_per_cycle = 0.0;    // running mean over completed pause cycles
    int n_components = 0;
};

/// Norm of the mean unit heading. Throws std::invalid_argument on an empty set.
double order(std::span<const double> headings);

/// Mean per-robot displacement magnitude divided by dt (0 for an empty set).
double mean_speed(std::span<const CartVec> displacements, double dt);

/// Speed of the centroid given per-robot displacements.
double centroid_speed(std::span<const CartVec> displacements, double dt);

/// Number of robots in a faulty set that are healthy in ground truth.
int false_positive_tally(std::span<const int> faulty_sources, std::span<const bool> truly_faulty);

/// Running mean of false positives per completed pause-go cycle.
class FalsePositiveCounter {
public:
    void add_cycle(int false_positives) {
        total_ += false_positives;
        ++cycles_;
    }
    double per_cycle() const { return cycles_ == 0 ? 0.0 : static_cast<double>(total_) / cycles_; }
    std::int64_t total() const { return total_; }
    std::int64_t cycles() const { return cycles_; }

private:
    std::int64_t total_ = 0;
    std::int64_t cycles_ = 0;
};

/// Connected components of the graph linking centers at most `range` apart.
int connectivity(std::span<const CartVec> positions, double range);

/// Mean and standard error (sample standard deviation / sqrt(n)); se is 0 for n < 2.
struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};
MeanSe mean_se(std::span<const double> values);

/// Mean order over the last `window` records (all records if fewer).
double final_order(std::span<const TickRecord> records, std::size_t window = 100);

/// Mean of mean_speed over the second half of the records.
double window_speed(std::span<const TickRecord> records);

inline constexpr const char* kMetricsHeader =
    "tick,order,mean_speed,centroid_speed,fp_per_cycle,n_components";

void write_metrics_csv(std::ostream& out, std::span<const TickRecord> records);
std::vector<TickRecord> read_metrics_csv(std::istream& in);

/// Shortest round-trip decimal text of a double, locale independent.
std::string format_double(double v);

}  // namespace swarm
