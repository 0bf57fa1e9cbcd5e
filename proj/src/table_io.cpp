#include "halfsign/table_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace halfsign::arith {

void write_table(std::ostream& out, const CoefficientTable& table) {
    const std::string& label = table.label();
    if (label.empty() || label.find_first_of(" \t\r\n") != std::string::npos)
        throw FormatError("table label must be a non-empty word: '" + label + "'");
    out << "# " << label << ' ' << table.limit() << '\n';
    for (u64 n = 1; n <= table.limit(); ++n) out << n << '\t' << table[n].get_str() << '\n';
}

CoefficientTable read_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty table stream");
    std::istringstream header(line);
    std::string hash, label;
    u64 limit = 0;
    if (!(header >> hash >> label >> limit) || hash != "#" || limit < 1)
        throw FormatError("bad table header: '" + line + "'");
    CoefficientTable table(label, limit);
    for (u64 n = 1; n <= limit; ++n) {
        if (!std::getline(in, line)) throw FormatError("table truncated at n = " + std::to_string(n));
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw FormatError("missing TAB on line for n = " + std::to_string(n));
        if (line.substr(0, tab) != std::to_string(n))
            throw FormatError("expected index " + std::to_string(n) + ", got '" + line.substr(0, tab) + "'");
        if (table[n].set_str(line.substr(tab + 1), 10) != 0)
            throw FormatError("bad integer at n = " + std::to_string(n));
    }
    return table;
}

void save_table(const std::string& path, const CoefficientTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    write_table(out, table);
}

CoefficientTable load_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    return read_table(in);
}

}  // namespace halfsign::arith
