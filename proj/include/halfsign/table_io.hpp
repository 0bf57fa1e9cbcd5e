#ifndef HALFSIGN_TABLE_IO_HPP
#define HALFSIGN_TABLE_IO_HPP

#include <iosfwd>
#include <string>

#include "halfsign/arithfn.hpp"

namespace halfsign::arith {

// Line format:
//   # <label> <limit>
//   n<TAB>value        (one line per n = 1..limit, exact decimal)
void write_table(std::ostream& out, const CoefficientTable& table);
CoefficientTable read_table(std::istream& in);

void save_table(const std::string& path, const CoefficientTable& table);
CoefficientTable load_table(const std::string& path);

}  // namespace halfsign::arith

#endif
