#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fireseverity {

struct Date {
    int year = 0;
    int month = 0; // 1..12
    int day = 0;   // 1..31

    auto operator<=>(const Date&) const = default;

    bool valid() const;
    std::string to_string() const; // YYYY-MM-DD
    static std::optional<Date> parse(std::string_view s);
};

enum class Satellite : std::uint8_t { Terra, Aqua };
enum class DayNight : std::uint8_t { Day, Night };

// One FIRMS active-fire detection.
struct FireEvent {
    double latitude = 0.0;   // degrees WGS84
    double longitude = 0.0;  // degrees WGS84
    Date acq_date;
    int acq_time = 0;        // minutes of day, UTC
    double brightness = 0.0; // Kelvin
    double bright_t31 = 0.0; // Kelvin
    double frp = 0.0;        // megawatts
    double scan = 0.0;       // km
    double track = 0.0;      // km
    double confidence = 0.0; // percent 0..100
    Satellite satellite = Satellite::Terra;
    DayNight daynight = DayNight::Day;

    bool operator==(const FireEvent&) const = default;

    // Empty string when all invariants hold, otherwise the first violation.
    std::string invariant_violation() const;
};

std::string_view to_string(Satellite s);
std::string_view to_string(DayNight d);
std::optional<Satellite> parse_satellite(std::string_view s);
std::optional<DayNight> parse_daynight(std::string_view s);

} // namespace fireseverity
