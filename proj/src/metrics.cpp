#include "swarm/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <stdexcept>
#include <string>

namespace swarm {

double order(std::span<const double> headings) {
    if (headings.empty()) throw std::invalid_argument("order: no nominal robots");
    CartVec sum;
    for (double h : headings) sum += unit_vector(h);
    return (sum * (1.0 / static_cast<double>(headings.size()))).norm();
}

double mean_speed(std::span<const CartVec> displacements, double dt) {
    if (displacements.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& d : displacements) sum += d.norm();
    return sum / static_cast<double>(displacements.size()) / dt;
}

double centroid_speed(std::span<const CartVec> displacements, double dt) {
    if (displacements.empty()) return 0.0;
    CartVec sum;
    for (const auto& d : displacements) sum += d;
    return sum.norm() / static_cast<double>(displacements.size()) / dt;
}

int false_positive_tally(std::span<const int> faulty_sources, std::span<const bool> truly_faulty) {
    int count = 0;
    for (int j : faulty_sources) {
        if (!truly_faulty[static_cast<std::size_t>(j)]) ++count;
    }
    return count;
}

int connectivity(std::span<const CartVec> positions, double range) {
    const std::size_t n = positions.size();
    const double range_sq = range * range;
    std::vector<int> label(n, -1);
    std::vector<std::size_t> stack;
    int components = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] >= 0) continue;
        label[s] = components;
        stack.push_back(s);
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                if (label[j] >= 0) continue;
                const CartVec d = positions[j] - positions[i];
                if (d.dot(d) <= range_sq) {
                    label[j] = components;
                    stack.push_back(j);
                }
            }
        }
        ++components;
    }
    return components;
}

MeanSe mean_se(std::span<const double> values) {
    MeanSe out;
    if (values.empty()) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    const double n = static_cast<double>(values.size());
    out.mean = sum / n;
    if (values.size() < 2) return out;
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    return out;
}

double final_order(std::span<const TickRecord> records, std::size_t window) {
    if (records.empty()) return 0.0;
    const std::size_t k = std::min(window, records.size());
    double sum = 0.0;
    for (std::size_t i = records.size() - k; i < records.size(); ++i) sum += records[i].order;
    return sum / static_cast<double>(k);
}

double window_speed(std::span<const TickRecord> records) {
    if (records.empty()) return 0.0;
    const std::size_t start = records.size() / 2;
    double sum = 0.0;
    for (std::size_t i = start; i < records.size(); ++i) sum += records[i].mean_speed;
    return sum / static_cast<double>(records.size() - start);
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_metrics_csv(std::ostream& out, std::span<const TickRecord> records) {
    out << kMetricsHeader << '\n';
    for (const auto& r : records) {
        out << r.tick << ',' << format_double(r.order) << ',' << format_double(r.mean_speed) << ','
            << format_double(r.centroid_speed) << ',' << format_double(r.fp_per_cycle) << ','
            << r.n_components << '\n';
    }
}

namespace {

double parse_number(std::string_view field) {
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{}) throw std::runtime_error("metrics csv: bad number '" + std::string(field) + "'");
    return v;
}

}  // namespace

std::vector<TickRecord> read_metrics_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kMetricsHeader) {
        throw std::runtime_error("metrics csv: missing or wrong header");
    }
    std::vector<TickRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string_view> f;
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            f.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (f.size() != 6) throw std::runtime_error("metrics csv: expected 6 columns");
        TickRecord r;
        r.tick = static_cast<std::int64_t>(parse_number(f[0]));
        r.order = parse_number(f[1]);
        r.mean_speed = parse_number(f[2]);
        r.centroid_speed = parse_number(f[3]);
        r.fp_per_cycle = parse_number(f[4]);
        r.n_components = static_cast<int>(parse_number(f[5]));
        records.push_back(r);
    }
    return records;
}

}  // namespace swarm
