var util = {};

util.trim = function(s) {
  return s.replace(/^\s+|\s+$/g, "");
};

util["parse-int"] = function(s) {
  return parseInt(s, 10);
};

module.exports = util;
