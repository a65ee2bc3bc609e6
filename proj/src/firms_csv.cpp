#include "fireseverity/firms_csv.hpp"

#include "fireseverity/errors.hpp"
#include "fireseverity/textio.hpp"

#include <algorithm>
#include <map>

namespace fireseverity {

namespace {

const char* kMandatory[] = {"latitude", "longitude", "brightness", "scan", "track",
                            "acq_date", "acq_time", "confidence", "frp"};

int find_column(const std::vector<std::string>& header, const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : int(it - header.begin());
}

// FIRMS acq_time is HHMM; plain integers and H:MM forms appear in exports.
std::optional<int> parse_acq_time(std::string_view raw) {
    std::string s(trim(raw));
    s.erase(std::remove(s.begin(), s.end(), ':'), s.end());
    auto v = parse_int(s);
    if (!v || *v < 0) return std::nullopt;
    int hh = int(*v / 100), mm = int(*v % 100);
    if (hh > 23 || mm > 59) return std::nullopt;
    return hh * 60 + mm;
}

} // namespace

FirmsReadResult read_firms_csv(const std::filesystem::path& path) {
    auto lines = read_lines(path);
    if (lines.empty()) throw InputError(path.string() + ": empty file, expected a header row");

    std::vector<std::string> header = split(lines[0], ',');
    for (auto& h : header) h = trim(h);
    for (const char* col : kMandatory)
        if (find_column(header, col) < 0)
            throw InputError(path.string() + ": missing mandatory column '" + col + "'");

    const int c_lat = find_column(header, "latitude");
    const int c_lon = find_column(header, "longitude");
    const int c_bright = find_column(header, "brightness");
    const int c_scan = find_column(header, "scan");
    const int c_track = find_column(header, "track");
    const int c_date = find_column(header, "acq_date");
    const int c_time = find_column(header, "acq_time");
    const int c_conf = find_column(header, "confidence");
    const int c_frp = find_column(header, "frp");
    const int c_sat = find_column(header, "satellite");
    const int c_t31 = find_column(header, "bright_t31");
    const int c_dn = find_column(header, "daynight");

    FirmsReadResult result;
    for (size_t i = 1; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (trim(line).empty()) continue;
        const size_t row = i; // 1-based data row (header is row 0)

        auto fields = split(line, ',');
        if (fields.size() < header.size()) {
            result.rejections.push_back({row, "expected " + std::to_string(header.size()) +
                                                  " fields, got " + std::to_string(fields.size())});
            continue;
        }

        auto num = [&](int col) -> std::optional<double> {
            return parse_double(trim(fields[size_t(col)]));
        };

        FireEvent e;
        auto lat = num(c_lat), lon = num(c_lon), bright = num(c_bright);
        auto scan = num(c_scan), track = num(c_track), conf = num(c_conf), frp = num(c_frp);
        auto date = Date::parse(trim(fields[size_t(c_date)]));
        auto time = parse_acq_time(fields[size_t(c_time)]);
        if (!lat || !lon || !bright || !scan || !track || !conf || !frp) {
            result.rejections.push_back({row, "unparsable numeric field"});
            continue;
        }
        if (!date) {
            result.rejections.push_back({row, "unparsable acq_date"});
            continue;
        }
        if (!time) {
            result.rejections.push_back({row, "unparsable acq_time"});
            continue;
        }
        e.latitude = *lat;
        e.longitude = *lon;
        e.brightness = *bright;
        e.scan = *scan;
        e.track = *track;
        e.acq_date = *date;
        e.acq_time = *time;
        e.confidence = *conf;
        e.frp = *frp;
        if (c_t31 >= 0) {
            if (auto t31 = num(c_t31)) e.bright_t31 = *t31;
        }
        if (c_sat >= 0) {
            if (auto sat = parse_satellite(trim(fields[size_t(c_sat)]))) e.satellite = *sat;
        }
        if (c_dn >= 0) {
            if (auto dn = parse_daynight(trim(fields[size_t(c_dn)]))) e.daynight = *dn;
        }

        if (std::string why = e.invariant_violation(); !why.empty()) {
            result.rejections.push_back({row, why});
            continue;
        }
        result.events.push_back(e);
    }
    return result;
}

void write_rejection_report(const std::vector<CsvRejection>& rejections,
                            const std::filesystem::path& path) {
    std::string out = "row_number,reason\n";
    for (const auto& r : rejections)
        out += std::to_string(r.row_number) + "," + r.reason + "\n";
    write_text_file(path, out);
}

void write_events_csv(const std::vector<FireEvent>& events,
                      const std::filesystem::path& path) {
    std::string out =
        "latitude,longitude,brightness,scan,track,acq_date,acq_time,satellite,"
        "confidence,bright_t31,frp,daynight\n";
    for (const auto& e : events) {
        char timebuf[8];
        std::snprintf(timebuf, sizeof(timebuf), "%02d%02d", e.acq_time / 60, e.acq_time % 60);
        out += csv_join({format_double(e.latitude), format_double(e.longitude),
                         format_double(e.brightness), format_double(e.scan),
                         format_double(e.track), e.acq_date.to_string(), timebuf,
                         std::string(to_string(e.satellite)), format_double(e.confidence),
                         format_double(e.bright_t31), format_double(e.frp),
                         std::string(to_string(e.daynight))});
    }
    write_text_file(path, out);
}

} // namespace fireseverity
