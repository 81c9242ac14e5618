#include "qpa/quiverfile.hpp"
