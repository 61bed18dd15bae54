var config = {
  debug: false,
  level: 3
};

if (process.env.NODE_ENV === "production") {
  delete config.debug;
}

module.exports = config;
