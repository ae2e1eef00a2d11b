#include "svg.hpp"

#include "ssys/report.hpp"

#include <cmath>
#include <sstream>

namespace ssys::tool {

namespace {

constexpr double kSize = 800.0;

struct Mapper {
    const PortraitWindow& w;
    double x(double u) const { return kSize * (u - w.u_min) / (w.u_max - w.u_min); }
    double y(double v) const { return kSize * (w.v_max - v) / (w.v_max - w.v_min); }
};

// clip an origin line with direction (du,dv) to the window, as endpoints
bool clip_line(const PortraitWindow& w, double du, double dv, Vec2& p0, Vec2& p1) {
    // parametrize (t*du, t*dv); intersect with the window box
    double t_min = 1e300, t_max = -1e300;
    auto consider = [&](double t) {
        const double u = t * du, v = t * dv;
        const double eps = 1e-9 * (std::abs(w.u_max) + std::abs(w.v_max) + 1.0);
        if (u >= w.u_min - eps && u <= w.u_max + eps && v >= w.v_min - eps && v <= w.v_max + eps) {
            t_min = std::min(t_min, t);
            t_max = std::max(t_max, t);
        }
    };
    if (du != 0.0) {
        consider(w.u_min / du);
        consider(w.u_max / du);
    }
    if (dv != 0.0) {
        consider(w.v_min / dv);
        consider(w.v_max / dv);
    }
    if (!(t_min < t_max)) return false;
    p0 = {t_min * du, t_min * dv};
    p1 = {t_max * du, t_max * dv};
    return true;
}

}  // namespace

std::string portrait_svg(const ParameterScheme& s, const PortraitWindow& window,
                         const std::vector<Trajectory>& trajectories) {
    const Mapper m{window};
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    out << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";

    // axes
    out << "<line x1=\"" << format_double(m.x(window.u_min)) << "\" y1=\"" << format_double(m.y(0))
        << "\" x2=\"" << format_double(m.x(window.u_max)) << "\" y2=\"" << format_double(m.y(0))
        << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << format_double(m.x(0)) << "\" y1=\"" << format_double(m.y(window.v_min))
        << "\" x2=\"" << format_double(m.x(0)) << "\" y2=\"" << format_double(m.y(window.v_max))
        << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";

    // trajectories (clipped to the window)
    for (const Trajectory& tr : trajectories) {
        std::string points;
        int count = 0;
        for (const TrajectorySample& p : tr.samples) {
            if (p.u < window.u_min || p.u > window.u_max || p.v < window.v_min ||
                p.v > window.v_max)
                continue;
            if (count) points += ' ';
            points += format_double(m.x(p.u)) + "," + format_double(m.y(p.v));
            ++count;
        }
        if (count < 2) continue;
        out << "<polyline fill=\"none\" stroke=\"#404040\" stroke-width=\"0.8\" points=\""
            << points << "\"/>\n";
    }

    // nullclines through the origin: u-nullcline red, v-nullcline green
    auto nullcline = [&](double j_row_a, double j_row_b, const char* color) {
        // (a_i - a_j) u + (b_i - b_j) v = 0  ->  direction (-(b), a)
        Vec2 p0, p1;
        if (clip_line(window, -j_row_b, j_row_a, p0, p1)) {
            out << "<line x1=\"" << format_double(m.x(p0.u)) << "\" y1=\""
                << format_double(m.y(p0.v)) << "\" x2=\"" << format_double(m.x(p1.u))
                << "\" y2=\"" << format_double(m.y(p1.v)) << "\" stroke=\"" << color
                << "\" stroke-width=\"1.6\"/>\n";
        }
    };
    nullcline(s.a1 - s.a2, s.b1 - s.b2, "#cc0000");
    nullcline(s.a3 - s.a4, s.b3 - s.b4, "#00aa00");

    // equilibrium marker
    out << "<circle cx=\"" << format_double(m.x(0)) << "\" cy=\"" << format_double(m.y(0))
        << "\" r=\"3\" fill=\"black\"/>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace ssys::tool
