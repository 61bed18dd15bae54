"use strict";
var util = require("util");
module.exports.format = util.format;
