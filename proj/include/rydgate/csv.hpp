// csv.hpp: CSV serialisation of trajectories and sweeps
//
// Format: one "# meta: k=v k=v ..." line, a header row, then data rows.
// Comma separated, '.' decimal point, 17 significant digits, LF endings,
// empty field where a value is undefined.

#pragma once

#include "rydgate/experiments.hpp"
#include "rydgate/gate.hpp"
#include "rydgate/model.hpp"

#include <cstddef>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rydgate {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Metadata describe_run(const GateConfig& c) {
    Metadata meta;
    describe_config(meta, "run", c);
    meta.add("run.dissipative", c.dissipative ? "true" : "false");
    meta.add("run.initial", std::holds_alternative<BasisIndex>(c.initial) ? std::string(label(std::get<BasisIndex>(c.initial)))
                                                                           : std::string("superposition"));
    return meta;
}

inline void write_meta(std::ostream& os, const Metadata& meta) {
    os << "# meta:";
    for (const auto& [k, v] : meta.entries) os << ' ' << k << '=' << v;
    os << '\n';
}

inline void write_trajectory_csv(std::ostream& os, const GateResult& r, const Metadata& meta = {}) {
    write_meta(os, meta);
    os << 't';
    for (auto l : kBasisLabels) os << ",p_" << l;
    os << ",phase,fidelity\n";
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        os << format_number(r.times[i]);
        for (double p : r.populations.at(i)) os << ',' << format_number(p);
        os << ',';
        if (i < r.tracked_phase.size() && r.tracked_phase[i]) os << format_number(*r.tracked_phase[i]);
        os << ',';
        if (i < r.fidelity.size()) os << format_number(r.fidelity[i]);
        os << '\n';
    }
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& r) {
    write_meta(os, r.meta);
    os << "x,fidelity_gsc,fidelity_rect\n";
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        os << format_number(r.x[i]) << ',';
        if (i < r.fidelity_gsc.size()) os << format_number(r.fidelity_gsc[i]);
        os << ',';
        if (i < r.fidelity_rect.size()) os << format_number(r.fidelity_rect[i]);
        os << '\n';
    }
}

namespace detail {

template <class Writer>
void write_file(const std::string& path, Writer&& writer) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path + " for writing");
    writer(os);
    os.flush();
    if (!os) throw IoError("write to " + path + " failed");
}

}  // namespace detail

inline void write_csv(const GateResult& r, const std::string& path, const Metadata& meta = {}) {
    detail::write_file(path, [&](std::ostream& os) { write_trajectory_csv(os, r, meta); });
}

inline void write_csv(const SweepResult& r, const std::string& path) {
    detail::write_file(path, [&](std::ostream& os) { write_sweep_csv(os, r); });
}

}  // namespace rydgate
