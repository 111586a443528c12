#ifndef DOPKIT_VERSION_HPP
#define DOPKIT_VERSION_HPP

namespace dopkit {

const char* version();

}

#endif
