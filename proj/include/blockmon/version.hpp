#pragma once

#define BLOCKMON_VERSION "1.0.0"
