#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace unilrc {

// Six significant digits, '.' decimal point regardless of the global locale.
std::string format_number(double value);

// Writes one comma-separated line. Fields are expected to be free of commas.
void write_csv_row(std::ostream& os, std::initializer_list<std::string_view> fields);

}  // namespace unilrc
