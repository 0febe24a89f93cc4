#include "qfb/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qfb {

namespace {

constexpr const char* header_row = "t,re_ce,im_ce,re_cg,im_cg,pop_e,pop_g";

void put(std::string& line, double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (!line.empty())
        line += ',';
    line += buf;
}

}  // namespace

void write_trajectory(std::ostream& os, const Trajectory& traj, const std::string& comment)
{
    os << "# " << comment << '\n' << header_row << '\n';
    std::string line;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const AmplitudeState& s = traj[i];
        line.clear();
        put(line, traj.time(i));
        put(line, s.ce.real());
        put(line, s.ce.imag());
        put(line, s.cg.real());
        put(line, s.cg.imag());
        put(line, s.population_e());
        put(line, s.population_g());
        os << line << '\n';
    }
}

void write_trajectory_file(const std::filesystem::path& path, const Trajectory& traj,
                           const std::string& comment)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    write_trajectory(out, traj, comment);
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

Trajectory read_trajectory(std::istream& is)
{
    std::string line;
    int line_no = 0;
    bool header = false;
    std::vector<double> times;
    std::vector<AmplitudeState> samples;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        if (!header) {
            if (line != header_row)
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": expected header '" + header_row + "'");
            header = true;
            continue;
        }
        double v[7];
        const char* p = line.c_str();
        for (int c = 0; c < 7; ++c) {
            char* end = nullptr;
            v[c] = std::strtod(p, &end);
            if (end == p || (c < 6 && *end != ',') || (c == 6 && *end != '\0'))
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": malformed trajectory row");
            p = end + (c < 6 ? 1 : 0);
        }
        times.push_back(v[0]);
        samples.push_back({{v[1], v[2]}, {v[3], v[4]}});
    }
    if (!header)
        throw std::invalid_argument("missing trajectory header");
    if (samples.empty())
        throw std::invalid_argument("trajectory file has no samples");
    if (samples.size() == 1)
        throw std::invalid_argument("trajectory file needs at least two samples to fix dt");

    const double t0 = times.front();
    const double dt = (times.back() - t0) / static_cast<double>(times.size() - 1);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double expected = t0 + static_cast<double>(i) * dt;
        if (std::abs(times[i] - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
            throw std::invalid_argument("trajectory times are not uniformly spaced near t = " +
                                        std::to_string(times[i]));
    }
    return Trajectory(t0, dt, std::move(samples));
}

Trajectory read_trajectory_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return read_trajectory(in);
}

}  // namespace qfb
