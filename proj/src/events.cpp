#include "fireseverity/events.hpp"

#include "fireseverity/textio.hpp"

#include <cmath>

namespace fireseverity {

namespace {

constexpr int kDaysInMonth[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

} // namespace

bool Date::valid() const {
    if (month < 1 || month > 12 || day < 1) return false;
    int dim = kDaysInMonth[month - 1];
    if (month == 2 && leap(year)) dim = 29;
    return day <= dim;
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

std::optional<Date> Date::parse(std::string_view s) {
    auto parts = split(s, '-');
    if (parts.size() != 3) return std::nullopt;
    auto y = parse_int(parts[0]);
    auto m = parse_int(parts[1]);
    auto d = parse_int(parts[2]);
    if (!y || !m || !d) return std::nullopt;
    Date date{static_cast<int>(*y), static_cast<int>(*m), static_cast<int>(*d)};
    if (!date.valid()) return std::nullopt;
    return date;
}

std::string FireEvent::invariant_violation() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(latitude) || latitude < -90.0 || latitude > 90.0)
        return "latitude outside [-90, 90]";
    if (!finite(longitude) || longitude < -180.0 || longitude > 180.0)
        return "longitude outside [-180, 180]";
    if (!acq_date.valid()) return "invalid acquisition date";
    if (acq_time < 0 || acq_time >= 24 * 60) return "acquisition time outside day range";
    if (!finite(confidence) || confidence < 0.0 || confidence > 100.0)
        return "confidence outside [0, 100]";
    if (!finite(frp) || frp < 0.0) return "negative FRP";
    if (!finite(scan) || scan <= 0.0) return "non-positive scan";
    if (!finite(track) || track <= 0.0) return "non-positive track";
    if (!finite(brightness)) return "non-finite brightness";
    if (!finite(bright_t31)) return "non-finite bright_t31";
    return {};
}

std::string_view to_string(Satellite s) {
    return s == Satellite::Terra ? "Terra" : "Aqua";
}

std::string_view to_string(DayNight d) { return d == DayNight::Day ? "D" : "N"; }

std::optional<Satellite> parse_satellite(std::string_view s) {
    if (s == "Terra" || s == "T" || s == "terra") return Satellite::Terra;
    if (s == "Aqua" || s == "A" || s == "aqua") return Satellite::Aqua;
    return std::nullopt;
}

std::optional<DayNight> parse_daynight(std::string_view s) {
    if (s == "D" || s == "d") return DayNight::Day;
    if (s == "N" || s == "n") return DayNight::Night;
    return std::nullopt;
}

} // namespace fireseverity
