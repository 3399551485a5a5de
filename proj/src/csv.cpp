#include "unilrc/csv.h"

#include <locale>
#include <sstream>

namespace unilrc {

std::string format_number(double value) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(6);
  os << value;
  return os.str();
}

void write_csv_row(std::ostream& os, std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (std::string_view f : fields) {
    if (!first) os << ',';
    os << f;
    first = false;
  }
  os << '\n';
}

}  // namespace unilrc
