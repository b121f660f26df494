#include "vpol/reference_table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vpol {

namespace detail {
extern const std::string_view kReferenceTableCsv;
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view field, const std::string& where)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v))
        throw ParseError(where + ": not a number: '" + std::string(field) + "'");
    return v;
}

}  // namespace

ReferenceTable ReferenceTable::parse(std::string_view text, std::string source)
{
    ReferenceTable t;
    t.source_ = std::move(source);
    int line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = (nl == std::string_view::npos) ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty())
            continue;
        const std::string where = t.source_ + ":" + std::to_string(line_no);
        if (!header_seen) {
            if (line != "x,iks")
                throw ParseError(where + ": expected header 'x,iks'");
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
            throw ParseError(where + ": expected two comma-separated fields");
        const std::string_view xs = trim(line.substr(0, comma));
        const std::string_view vs = trim(line.substr(comma + 1));
        const double x = parse_number(xs, where);
        if (!(x > 0.0))
            throw ParseError(where + ": abscissa must be positive");
        if (!t.rows_.empty() && !(x > t.rows_.back().x))
            throw ParseError(where + ": abscissas must be strictly increasing");
        t.rows_.push_back({x, parse_number(vs, where), std::string(xs), line_no});
    }
    if (!header_seen)
        throw ParseError(t.source_ + ": empty table");
    return t;
}

ReferenceTable ReferenceTable::from_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open fixture '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

const ReferenceTable& ReferenceTable::embedded()
{
    static const ReferenceTable t = parse(detail::kReferenceTableCsv, "embedded:ks_reference_table.csv");
    return t;
}

int required_significant_digits(double x)
{
    if (x <= 1.0)
        return 8;
    if (x <= 5.0)
        return 6;
    return 4;
}

double relative_deviation(double computed, double reference)
{
    return std::fabs(computed - reference) / std::fabs(reference);
}

}  // namespace vpol
