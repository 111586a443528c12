#include "dopkit/version.hpp"

namespace dopkit {

const char* version() { return "0.1.0"; }

}
