#pragma once

#include <charconv>
#include <chrono>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "paperrank/citation_graph.hpp"

namespace paperrank {

using Date = std::chrono::year_month_day;

/// Parses an ISO-8601 calendar date "YYYY-MM-DD".
inline Date parse_date(std::string_view s) {
    auto fail = [&] {
        throw std::invalid_argument("expected ISO date YYYY-MM-DD, got '" +
                                    std::string(s) + "'");
    };
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') fail();
    auto num = [&](std::string_view part) {
        int value = 0;
        auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || p != part.data() + part.size()) fail();
        return value;
    };
    const Date d = std::chrono::year{num(s.substr(0, 4))} /
                   std::chrono::month{static_cast<unsigned>(num(s.substr(5, 2)))} /
                   std::chrono::day{static_cast<unsigned>(num(s.substr(8, 2)))};
    if (!d.ok()) fail();
    return d;
}

inline std::string format_date(Date d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(d.year()),
                  unsigned(d.month()), unsigned(d.day()));
    return buf;
}

/// Date minus whole years, month and day preserved. A day that does not
/// exist in the target year (Feb 29) is clamped to the month's last day.
inline Date years_before(Date d, int years) {
    Date shifted = d - std::chrono::years{years};
    if (!shifted.ok())
        shifted = shifted.year() / shifted.month() / std::chrono::last;
    return shifted;
}

/// Per-paper metadata for author/journal aggregation. An empty author set
/// or journal marks the record as metadata-incomplete; aggregation rejects
/// such papers when they contribute.
struct PaperMeta {
    PaperId paper = 0;
    std::vector<std::string> authors;
    std::string journal;
    Date date{};
};

/// nu-years window at reference date t: paper i contributes iff
/// d_i >= t - nu.
struct TimeWindow {
    TimeWindow(Date t_, int nu_years_) : t(t_), nu_years(nu_years_) {
        if (nu_years <= 0)
            throw std::invalid_argument("window length nu must be positive");
    }

    bool contains(Date d) const { return d >= years_before(t, nu_years); }

    Date t;
    int nu_years;
};

} // namespace paperrank
