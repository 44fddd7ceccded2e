#pragma once

#define DHO_VERSION_MAJOR 1
#define DHO_VERSION_MINOR 0
#define DHO_VERSION_PATCH 0
#define DHO_VERSION_STRING "1.0.0"
