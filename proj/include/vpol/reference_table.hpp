#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vpol {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ReferenceRow {
    double x;
    double iks;
    //! Abscissa exactly as written in the fixture.
    std::string x_text;
    int line;
};

//! The bundled (x, I_KS) value table, or a user-supplied file in the same format.
class ReferenceTable {
public:
    //! CSV with header "x,iks" and one "x,value" pair per line. Throws ParseError.
    static ReferenceTable parse(std::string_view text, std::string source);
    static ReferenceTable from_file(const std::filesystem::path& path);
    static const ReferenceTable& embedded();

    const std::vector<ReferenceRow>& rows() const { return rows_; }
    const std::string& source() const { return source_; }

private:
    std::vector<ReferenceRow> rows_;
    std::string source_;
};

//! Significant digits the table is expected to carry at x: 8 up to 1, 6 up to 5, 4 beyond.
int required_significant_digits(double x);

//! |computed - reference| / |reference|.
double relative_deviation(double computed, double reference);

}  // namespace vpol
