/*  Copyright 2026 The sparse-recovery Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.  */

#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "recovery/bench/experiment.hpp"

namespace recovery::bench
{
    namespace detail
    {
        inline std::string fmt(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2f", v);
            return buf;
        }

        inline std::string xml_escape(const std::string& s)
        {
            std::string out;
            for (char ch : s) {
                switch (ch) {
                    case '&': out += "&amp;"; break;
                    case '<': out += "&lt;"; break;
                    case '>': out += "&gt;"; break;
                    case '"': out += "&quot;"; break;
                    default:  out += ch;
                }
            }
            return out;
        }
    }

    /// Success rate against sparsity k, one polyline with markers per method.
    inline std::string render_svg(const SuccessCurve& curve, const std::string& title = "Success rate vs sparsity")
    {
        require(!curve.empty(), "emit_plot: empty curve");

        constexpr double width = 640, height = 420;
        constexpr double left = 70, right = 170, top = 40, bottom = 60;
        const double plot_w = width - left - right;
        const double plot_h = height - top - bottom;
        static constexpr std::array<const char*, 6> palette{
            "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

        Index k_lo = std::numeric_limits<Index>::max(), k_hi = std::numeric_limits<Index>::min();
        for (const auto& [method, by_k] : curve.rates) {
            for (const auto& [k, tally] : by_k) {
                k_lo = std::min(k_lo, k);
                k_hi = std::max(k_hi, k);
            }
        }
        const double span = k_hi > k_lo ? static_cast<double>(k_hi - k_lo) : 1.0;
        auto px = [&](Index k) {
            return k_hi > k_lo ? left + plot_w * static_cast<double>(k - k_lo) / span : left + plot_w / 2;
        };
        auto py = [&](double rate) { return top + plot_h * (1.0 - rate); };

        std::ostringstream os;
        os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
           << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
           << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
           << "<text x=\"" << detail::fmt(left + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" "
              "font-family=\"sans-serif\" font-size=\"15\">" << detail::xml_escape(title) << "</text>\n";

        // axes and grid
        os << "<g stroke=\"black\" stroke-width=\"1\">\n"
           << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
           << "\" y2=\"" << top + plot_h << "\"/>\n"
           << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h << "\"/>\n"
           << "</g>\n";
        os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
        for (int i = 0; i <= 5; ++i) {
            const double rate = i / 5.0;
            const double y = py(rate);
            os << "<line x1=\"" << left - 4 << "\" y1=\"" << detail::fmt(y) << "\" x2=\"" << left + plot_w
               << "\" y2=\"" << detail::fmt(y) << "\" stroke=\"#dddddd\"/>\n"
               << "<text x=\"" << left - 8 << "\" y=\"" << detail::fmt(y + 4) << "\" text-anchor=\"end\">"
               << detail::fmt(rate) << "</text>\n";
        }
        std::map<Index, bool> ticks;
        for (const auto& [method, by_k] : curve.rates)
            for (const auto& [k, tally] : by_k) ticks[k] = true;
        for (const auto& [k, unused] : ticks) {
            const double x = px(k);
            os << "<line x1=\"" << detail::fmt(x) << "\" y1=\"" << top + plot_h << "\" x2=\"" << detail::fmt(x)
               << "\" y2=\"" << top + plot_h + 4 << "\" stroke=\"black\"/>\n"
               << "<text x=\"" << detail::fmt(x) << "\" y=\"" << top + plot_h + 18
               << "\" text-anchor=\"middle\">" << k << "</text>\n";
        }
        os << "<text x=\"" << detail::fmt(left + plot_w / 2) << "\" y=\"" << height - 16
           << "\" text-anchor=\"middle\" font-size=\"13\">sparsity k</text>\n"
           << "<text x=\"18\" y=\"" << detail::fmt(top + plot_h / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
              "transform=\"rotate(-90 18 " << detail::fmt(top + plot_h / 2) << ")\">success rate</text>\n"
           << "</g>\n";

        // one series per method
        std::size_t series = 0;
        for (const auto& [method, by_k] : curve.rates) {
            const char* color = palette[series % palette.size()];
            os << "<g class=\"series\" data-method=\"" << detail::xml_escape(method) << "\">\n"
               << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
            bool first = true;
            for (const auto& [k, tally] : by_k) {
                os << (first ? "" : " ") << detail::fmt(px(k)) << ',' << detail::fmt(py(tally.rate()));
                first = false;
            }
            os << "\"/>\n";
            for (const auto& [k, tally] : by_k) {
                os << "<circle cx=\"" << detail::fmt(px(k)) << "\" cy=\"" << detail::fmt(py(tally.rate()))
                   << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
            }
            os << "</g>\n";

            const double ly = top + 10 + 22.0 * static_cast<double>(series);
            const double lx = left + plot_w + 16;
            os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n"
               << "<line x1=\"" << lx << "\" y1=\"" << detail::fmt(ly) << "\" x2=\"" << lx + 24 << "\" y2=\""
               << detail::fmt(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
               << "<text x=\"" << lx + 30 << "\" y=\"" << detail::fmt(ly + 4) << "\">" << detail::xml_escape(method)
               << "</text>\n</g>\n";
            ++series;
        }
        os << "</svg>\n";
        return os.str();
    }

    inline void emit_plot(const SuccessCurve& curve, const std::string& path,
                          const std::string& title = "Success rate vs sparsity")
    {
        const std::string svg = render_svg(curve, title);
        std::ofstream os(path, std::ios::binary);
        if (!os) throw Error(ErrorKind::io, "cannot open " + path + " for writing");
        os << svg;
        if (!os) throw Error(ErrorKind::io, "write failed: " + path);
    }
}
