#include "takagi/serialize.hpp"

#include <sstream>

namespace takagi {

Json integer_json(const BigInt& v)
{
    if (v.fits_slong_p()) {
        return Json(static_cast<std::int64_t>(v.get_si()));
    }
    return Json(v.get_str());
}

Json fraction_json(const Rational& v)
{
    return Json::array({integer_json(v.get_num()), integer_json(v.get_den())});
}

Json to_json(const ExtremaReport& report, HeightClass cls)
{
    return Json{
        {"max", to_string(report.max_value)},
        {"min", to_string(report.min_value)},
        {"height", to_string(report.height)},
        {"class", to_string(cls)},
        {"fractions",
         {{"max", fraction_json(report.max_value)},
          {"min", fraction_json(report.min_value)},
          {"height", fraction_json(report.height)}}},
    };
}

Json to_json(const Enclosure& e)
{
    return Json{{"lo", to_string(e.lo)}, {"hi", to_string(e.hi)}};
}

Json to_json(const LevelCover& cover)
{
    Json runs = Json::array();
    for (const auto& r : cover.runs) {
        runs.push_back(Json::array({r.first.get_str(), r.last.get_str()}));
    }
    return Json{
        {"y", to_string(cover.target_y)},
        {"depth", cover.depth},
        {"components", cover.component_count()},
        {"retained", cover.retained},
        {"runs", std::move(runs)},
    };
}

Json to_json(const McReport& report)
{
    return Json{
        {"estimate", report.estimate},
        {"std_error", report.std_error},
        {"samples", report.samples},
        {"discarded", report.discarded},
        {"seed", report.seed},
        {"truncation_order", report.truncation_order},
        {"analytic_truncated", to_string(report.analytic_truncated)},
        {"analytic_truncated_float", to_double(report.analytic_truncated)},
        {"analytic_limit", to_string(report.analytic_limit)},
        {"z_score", report.z_score},
    };
}

Json to_json(const CardinalityReport& report)
{
    Json hist = Json::object();
    for (const auto& [count, n] : report.histogram) {
        hist[std::to_string(count)] = n;
    }
    return Json{
        {"samples", report.samples},
        {"stabilized", report.stabilized},
        {"stabilized_fraction", report.stabilized_fraction()},
        {"seed", report.seed},
        {"depth", report.depth},
        {"histogram", std::move(hist)},
    };
}

Json to_json(const LocalCount& count, const Rational& y)
{
    return Json{
        {"y", to_string(y)},
        {"max_order", count.max_order},
        {"count", count.count},
        {"boundary", count.boundary},
        {"balanced", count.balanced},
    };
}

std::string hump_csv(const std::vector<TruncatedHump>& humps)
{
    std::ostringstream out;
    out << "base,order,generation,principal,y_base,projection_lo,projection_hi\n";
    for (const auto& t : humps) {
        const auto& h = t.hump;
        out << (h.base.depth() == 0 ? "-" : h.base.to_string()) << ',' << h.order << ',' << h.generation << ','
            << (h.principal ? 1 : 0) << ',' << to_string(h.y_base) << ',' << to_string(t.y_projection.lo) << ','
            << to_string(t.y_projection.hi) << '\n';
    }
    return out.str();
}

std::string cover_csv(const LevelCover& cover)
{
    std::ostringstream out;
    out << "component,x_lo,x_hi\n";
    for (std::size_t i = 0; i < cover.runs.size(); ++i) {
        const auto e = cover.run_interval(i);
        out << i << ',' << to_string(e.lo) << ',' << to_string(e.hi) << '\n';
    }
    return out.str();
}

std::string local_count_csv_row(const Rational& y, const LocalCount& count)
{
    std::ostringstream out;
    out << to_string(y) << ',' << count.max_order << ',' << count.count << ',' << (count.boundary ? 1 : 0) << ','
        << (count.balanced ? 1 : 0) << '\n';
    return out.str();
}

std::string histogram_csv(const CardinalityReport& report)
{
    std::ostringstream out;
    out << "components,samples\n";
    for (const auto& [count, n] : report.histogram) {
        out << count << ',' << n << '\n';
    }
    return out.str();
}

} // namespace takagi
