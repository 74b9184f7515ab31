#ifndef VP1D_DIAGNOSTICS_HPP
#define VP1D_DIAGNOSTICS_HPP

#include <string>
#include <vector>

#include "vp1d/errors.hpp"

namespace vp1d {

/// Named time series sampled on a common (increasing) time grid.
struct DiagnosticSeries {
    std::vector<double> times;
    std::vector<std::string> names;
    std::vector<std::vector<double>> channels;  // channels[c][k], same length as times

    int add_channel(const std::string& name) {
        names.push_back(name);
        channels.emplace_back();
        return static_cast<int>(names.size()) - 1;
    }

    int index_of(const std::string& name) const {
        for (std::size_t c = 0; c < names.size(); ++c)
            if (names[c] == name) return static_cast<int>(c);
        return -1;
    }

    const std::vector<double>& channel(const std::string& name) const {
        const int c = index_of(name);
        if (c < 0) throw ConfigError("DiagnosticSeries: no channel named " + name);
        return channels[c];
    }

    void push_sample(double t, const std::vector<double>& vals) {
        if (vals.size() != channels.size())
            throw ConfigError("DiagnosticSeries: sample arity mismatch");
        if (!times.empty() && t <= times.back())
            throw ConfigError("DiagnosticSeries: times must increase");
        times.push_back(t);
        for (std::size_t c = 0; c < vals.size(); ++c) channels[c].push_back(vals[c]);
    }

    void write_csv(const std::string& path) const;
};

}  // namespace vp1d

#endif
